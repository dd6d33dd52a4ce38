//! Exact arithmetic in GF(2^m), 1 <= m <= 16.
//!
//! Elements are residues of polynomials over GF(2) modulo a fixed irreducible
//! polynomial of degree `m`, stored as bit vectors (bit `i` is the coefficient
//! of `g^i`). For every `m` the modulus is the irreducible polynomial of
//! lowest Hamming weight with nonzero constant term, ties broken by the
//! smallest bit pattern. The resulting table is
//!
//! | m  | modulus                      | bits      |
//! |----|------------------------------|-----------|
//! | 1  | x + 1                        | `0x3`     |
//! | 2  | x^2 + x + 1                  | `0x7`     |
//! | 3  | x^3 + x + 1                  | `0xb`     |
//! | 4  | x^4 + x + 1                  | `0x13`    |
//! | 5  | x^5 + x^2 + 1                | `0x25`    |
//! | 6  | x^6 + x + 1                  | `0x43`    |
//! | 7  | x^7 + x + 1                  | `0x83`    |
//! | 8  | x^8 + x^4 + x^3 + x + 1      | `0x11b`   |
//! | 9  | x^9 + x + 1                  | `0x203`   |
//! | 10 | x^10 + x^3 + 1               | `0x409`   |
//! | 11 | x^11 + x^2 + 1               | `0x805`   |
//! | 12 | x^12 + x^3 + 1               | `0x1009`  |
//! | 13 | x^13 + x^4 + x^3 + x + 1     | `0x201b`  |
//! | 14 | x^14 + x^5 + 1               | `0x4021`  |
//! | 15 | x^15 + x + 1                 | `0x8003`  |
//! | 16 | x^16 + x^5 + x^3 + x + 1     | `0x1002b` |
//!
//! The text syntax writes an element as a polynomial in `g`, highest power
//! first: `0`, `1`, `g`, `g+1`, `g^2+1`.

use std::fmt;

use crate::error::FieldError;

pub const MAX_EXPONENT: u32 = 16;

/// A field element. Only meaningful together with the [`Field`] it came from.
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Elem(u16);

impl Elem {
    pub const ZERO: Elem = Elem(0);
    pub const ONE: Elem = Elem(1);

    #[inline]
    pub fn bits(self) -> u16 {
        self.0
    }

    #[inline]
    pub fn is_zero(self) -> bool {
        self.0 == 0
    }
}

impl std::ops::Add for Elem {
    type Output = Elem;
    #[inline]
    #[allow(clippy::suspicious_arithmetic_impl)]
    fn add(self, rhs: Elem) -> Elem {
        Elem(self.0 ^ rhs.0)
    }
}

impl std::ops::AddAssign for Elem {
    #[inline]
    #[allow(clippy::suspicious_op_assign_impl)]
    fn add_assign(&mut self, rhs: Elem) {
        self.0 ^= rhs.0;
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum ArithOp {
    Add,
    Mul,
    Inv,
    /// Raise the first operand to the power given by the bits of the second.
    Pow,
}

/// GF(2^m) with its fixed modulus.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub struct Field {
    m: u32,
    modulus: u32,
}

impl Field {
    /// The field with `2^m` elements and the canonical modulus for `m`.
    pub fn new(m: u32) -> Result<Field, FieldError> {
        if !(1..=MAX_EXPONENT).contains(&m) {
            return Err(FieldError::ExponentOutOfRange(m));
        }
        let modulus = canonical_modulus(m);
        Ok(Field { m, modulus })
    }

    /// A field with an explicit modulus; the polynomial is checked for
    /// irreducibility.
    pub fn with_modulus(m: u32, modulus: u32) -> Result<Field, FieldError> {
        if !(1..=MAX_EXPONENT).contains(&m) {
            return Err(FieldError::ExponentOutOfRange(m));
        }
        if poly_degree(modulus) != Some(m) || !is_irreducible(modulus) {
            return Err(FieldError::Reducible(modulus));
        }
        Ok(Field { m, modulus })
    }

    pub fn m(&self) -> u32 {
        self.m
    }

    pub fn modulus(&self) -> u32 {
        self.modulus
    }

    /// Number of elements, `2^m`.
    pub fn order(&self) -> u32 {
        1 << self.m
    }

    pub fn zero(&self) -> Elem {
        Elem::ZERO
    }

    pub fn one(&self) -> Elem {
        Elem::ONE
    }

    pub fn contains(&self, e: Elem) -> bool {
        (e.0 as u32) < self.order()
    }

    pub fn elem(&self, bits: u32) -> Result<Elem, FieldError> {
        if bits < self.order() {
            Ok(Elem(bits as u16))
        } else {
            Err(FieldError::NotInField { bits, m: self.m })
        }
    }

    #[inline]
    pub fn add(&self, a: Elem, b: Elem) -> Elem {
        a + b
    }

    #[inline]
    pub fn mul(&self, a: Elem, b: Elem) -> Elem {
        let (mut x, mut y) = (a.0 as u32, b.0 as u32);
        let mut acc = 0u32;
        while y != 0 {
            if y & 1 == 1 {
                acc ^= x;
            }
            y >>= 1;
            x <<= 1;
            if x >> self.m & 1 == 1 {
                x ^= self.modulus;
            }
        }
        Elem(acc as u16)
    }

    pub fn pow(&self, a: Elem, mut exp: u64) -> Elem {
        let mut base = a;
        let mut acc = Elem::ONE;
        while exp > 0 {
            if exp & 1 == 1 {
                acc = self.mul(acc, base);
            }
            base = self.mul(base, base);
            exp >>= 1;
        }
        acc
    }

    pub fn inv(&self, a: Elem) -> Result<Elem, FieldError> {
        if a.is_zero() {
            return Err(FieldError::InverseOfZero);
        }
        // a^(2^m - 2) = a^-1 in the multiplicative group of order 2^m - 1
        Ok(self.pow(a, u64::from(self.order()) - 2))
    }

    /// Inverse of a known unit.
    #[inline]
    pub fn inv_unit(&self, a: Elem) -> Elem {
        debug_assert!(!a.is_zero());
        self.pow(a, u64::from(self.order()) - 2)
    }

    /// Checked arithmetic entry point: both operands must belong to this field.
    pub fn arith(&self, a: Elem, b: Elem, op: ArithOp) -> Result<Elem, FieldError> {
        for e in [a, b] {
            if !self.contains(e) {
                return Err(FieldError::NotInField {
                    bits: e.0 as u32,
                    m: self.m,
                });
            }
        }
        match op {
            ArithOp::Add => Ok(self.add(a, b)),
            ArithOp::Mul => Ok(self.mul(a, b)),
            ArithOp::Inv => self.inv(a),
            ArithOp::Pow => Ok(self.pow(a, b.0 as u64)),
        }
    }

    /// All `2^m` elements in ascending bit order.
    pub fn elements(&self) -> impl Iterator<Item = Elem> + Clone {
        (0..self.order()).map(|b| Elem(b as u16))
    }

    /// All `2^m - 1` nonzero elements in ascending bit order.
    pub fn units(&self) -> impl Iterator<Item = Elem> + Clone {
        (1..self.order()).map(|b| Elem(b as u16))
    }

    pub fn parse_elem(&self, text: &str) -> Result<Elem, FieldError> {
        let text = text.trim();
        if text.is_empty() {
            return Err(FieldError::Syntax(text.to_string()));
        }
        let mut bits = 0u32;
        for term in text.split('+') {
            let term = term.trim();
            let power = match term {
                "0" => continue,
                "1" => 0,
                "g" => 1,
                _ => match term.strip_prefix("g^") {
                    Some(p) => p
                        .parse::<u32>()
                        .map_err(|_| FieldError::Syntax(text.to_string()))?,
                    None => return Err(FieldError::Syntax(text.to_string())),
                },
            };
            if power >= self.m {
                return Err(FieldError::DegreeTooLarge {
                    text: text.to_string(),
                    m: self.m,
                });
            }
            bits ^= 1 << power;
        }
        Ok(Elem(bits as u16))
    }

    pub fn fmt_elem(&self, e: Elem) -> ElemDisplay {
        ElemDisplay(e)
    }

    /// `2^m` as written in dga files.
    pub fn label(&self) -> String {
        format!("2^{}", self.m)
    }

    pub fn parse_label(text: &str) -> Result<Field, FieldError> {
        let m = text
            .trim()
            .strip_prefix("2^")
            .and_then(|m| m.parse::<u32>().ok())
            .ok_or_else(|| FieldError::Syntax(text.to_string()))?;
        Field::new(m)
    }
}

/// Polynomial-in-`g` rendering of an element.
pub struct ElemDisplay(Elem);

impl fmt::Display for ElemDisplay {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let bits = self.0 .0;
        if bits == 0 {
            return f.write_str("0");
        }
        let mut first = true;
        for p in (0..16).rev() {
            if bits >> p & 1 == 0 {
                continue;
            }
            if !first {
                f.write_str("+")?;
            }
            first = false;
            match p {
                0 => f.write_str("1")?,
                1 => f.write_str("g")?,
                _ => write!(f, "g^{p}")?,
            }
        }
        Ok(())
    }
}

impl fmt::Display for Elem {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        ElemDisplay(*self).fmt(f)
    }
}

fn poly_degree(p: u32) -> Option<u32> {
    (p != 0).then(|| 31 - p.leading_zeros())
}

fn poly_rem(mut a: u32, b: u32) -> u32 {
    let db = poly_degree(b).expect("nonzero divisor");
    while let Some(da) = poly_degree(a) {
        if da < db {
            break;
        }
        a ^= b << (da - db);
    }
    a
}

/// Trial division by every polynomial of degree 1..=deg/2.
pub(crate) fn is_irreducible(p: u32) -> bool {
    let Some(d) = poly_degree(p) else {
        return false;
    };
    if d == 0 {
        return false;
    }
    for dq in 1..=d / 2 {
        for q in (1u32 << dq)..(1u32 << (dq + 1)) {
            if poly_rem(p, q) == 0 {
                return false;
            }
        }
    }
    true
}

fn canonical_modulus(m: u32) -> u32 {
    let top = 1u32 << m;
    (0..top)
        .filter(|low| low & 1 == 1)
        .map(|low| top | low)
        .filter(|&p| is_irreducible(p))
        .min_by_key(|&p| (p.count_ones(), p))
        .expect("an irreducible polynomial exists in every degree")
}
