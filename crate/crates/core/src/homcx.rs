//! The degree 0/1 slice of the morphism complex `Hom(e1, e2)` and the
//! bilinearized chord complex.
//!
//! `Hom^0(e1, e2)` has basis `min_1, .., min_n` (one minimum per component)
//! and the duals `b^v` of degree -1 chords. `Hom^1` is spanned by one dual
//! `t^v` per loop generator and the duals `e^v` of degree 0 chords. On `Hom^0`
//!
//! ```text
//! m1(min_i)  = sum_{t on i} (1 + e1(t) e2(t)^-1) t^v
//!            + sum_{e: c(e) = i} e1(e) e^v + sum_{e: r(e) = i} e2(e) e^v
//! m1(b^v)    = sum_e c_{e,b} e^v
//! ```
//!
//! where `c_{e,b}` is the bilinearized coefficient of `b` in `de`.

use std::collections::BTreeMap;
use std::fmt;

use crate::augment::Augmentation;
use crate::dga::{Dga, GenId};
use crate::error::HomError;
use crate::gfield::{Elem, Field};
use crate::homotopy::{bilinear_matrix, parse_coefficients, CoeffError, DilatedHomotopy, DilationTuple};
use crate::linalg::{rank, Matrix, RowReduction};

/// `sum alpha_i min_i + sum K_b b^v`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Hom0Element {
    pub alpha: Vec<Elem>,
    /// Coefficients of the degree -1 chord duals; absent keys read as zero.
    pub kcoeffs: BTreeMap<GenId, Elem>,
}

impl Hom0Element {
    pub fn zero(dga: &Dga) -> Hom0Element {
        Hom0Element {
            alpha: vec![Elem::ZERO; dga.components()],
            kcoeffs: BTreeMap::new(),
        }
    }

    /// The cohomological unit `sum min_i`.
    pub fn unit(dga: &Dga) -> Hom0Element {
        Hom0Element {
            alpha: vec![Elem::ONE; dga.components()],
            kcoeffs: BTreeMap::new(),
        }
    }

    /// `kvals` aligned with [`Dga::neg_chords`].
    pub fn new(dga: &Dga, alpha: Vec<Elem>, kvals: &[Elem]) -> Hom0Element {
        Hom0Element {
            alpha,
            kcoeffs: dga
                .neg_chords()
                .iter()
                .copied()
                .zip(kvals.iter().copied())
                .filter(|(_, v)| !v.is_zero())
                .collect(),
        }
    }

    /// The element `sum d_i min_i + sum K(b) b^v` of a dilated homotopy.
    pub fn from_homotopy(h: &DilatedHomotopy) -> Hom0Element {
        Hom0Element {
            alpha: h.d.entries().to_vec(),
            kcoeffs: h.kvals.iter().filter(|(_, v)| !v.is_zero()).map(|(&b, &v)| (b, v)).collect(),
        }
    }

    /// Reads `alpha` as a dilation tuple and `K` as homotopy values. Fails
    /// when some `alpha_i` is zero.
    pub fn to_homotopy(&self, dga: &Dga) -> Option<DilatedHomotopy> {
        let d = DilationTuple::new(dga, self.alpha.clone()).ok()?;
        let kvals: Vec<Elem> = dga.neg_chords().iter().map(|&b| self.k(b)).collect();
        Some(DilatedHomotopy::new(dga, d, &kvals))
    }

    #[inline]
    pub fn k(&self, b: GenId) -> Elem {
        self.kcoeffs.get(&b).copied().unwrap_or(Elem::ZERO)
    }

    fn check(&self, dga: &Dga) -> Result<(), HomError> {
        if self.alpha.len() != dga.components() {
            return Err(HomError::AlphaLength {
                expected: dga.components(),
                found: self.alpha.len(),
            });
        }
        for &b in self.kcoeffs.keys() {
            let g = dga.generator(b);
            if !(g.is_chord() && g.degree == -1) {
                return Err(HomError::NotNegativeChord(g.name.clone()));
            }
        }
        Ok(())
    }

    pub fn to_text(&self, dga: &Dga) -> String {
        let alpha: Vec<String> = self.alpha.iter().map(|e| e.to_string()).collect();
        let mut out = format!("alpha = ({})\n", alpha.join(", "));
        for &b in dga.neg_chords() {
            out.push_str(&format!("K {} = {}\n", dga.name(b), self.k(b)));
        }
        out
    }

    pub fn parse(dga: &Dga, text: &str) -> Result<Hom0Element, HomError> {
        let (alpha, kvals) = parse_coefficients(dga, text, "alpha").map_err(|e| match e {
            CoeffError::Syntax(s) => HomError::Syntax(s),
            CoeffError::NotNegative(s) => HomError::NotNegativeChord(s),
            CoeffError::Field(f) => HomError::Field(f),
        })?;
        let alpha = alpha.ok_or_else(|| HomError::Syntax("missing `alpha = (...)` line".into()))?;
        let elem = Hom0Element {
            alpha,
            kcoeffs: kvals.into_iter().filter(|(_, v)| !v.is_zero()).collect(),
        };
        elem.check(dga)?;
        Ok(elem)
    }
}

/// Coefficients of `m1(A)` in `Hom^1`; zero entries are omitted.
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct Hom1Coeffs {
    /// Coefficient of the dual of each loop generator.
    pub loop_part: BTreeMap<GenId, Elem>,
    /// Coefficient of `e^v` for each degree 0 chord.
    pub chord_part: BTreeMap<GenId, Elem>,
}

impl Hom1Coeffs {
    pub fn is_zero(&self) -> bool {
        self.loop_part.is_empty() && self.chord_part.is_empty()
    }

    pub fn display<'a>(&'a self, dga: &'a Dga) -> impl fmt::Display + 'a {
        struct D<'a>(&'a Hom1Coeffs, &'a Dga);
        impl fmt::Display for D<'_> {
            fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
                if self.0.is_zero() {
                    return f.write_str("0");
                }
                let terms: Vec<String> = self
                    .0
                    .loop_part
                    .iter()
                    .chain(self.0.chord_part.iter())
                    .map(|(&g, &c)| format!("({c})*{}^v", self.1.name(g)))
                    .collect();
                f.write_str(&terms.join(" + "))
            }
        }
        D(self, dga)
    }
}

/// `Hom^0(e1, e2) -> Hom^1(e1, e2)` with the bilinearized coefficients
/// computed once.
pub struct HomSlice<'a> {
    dga: &'a Dga,
    e1: &'a Augmentation,
    e2: &'a Augmentation,
    zero: Vec<GenId>,
    /// `c_{e,b}`: rows degree 0 chords, columns degree -1 chords.
    coeffs: Matrix,
}

impl<'a> HomSlice<'a> {
    pub fn new(dga: &'a Dga, e1: &'a Augmentation, e2: &'a Augmentation) -> HomSlice<'a> {
        let zero = dga.zero_chords();
        let coeffs = bilinear_matrix(dga, e1, e2, &zero, dga.neg_chords());
        HomSlice {
            dga,
            e1,
            e2,
            zero,
            coeffs,
        }
    }

    fn morse_coeff(&self, t: GenId) -> Elem {
        let f = self.dga.field();
        Elem::ONE + f.mul(self.e1.value(t), f.inv_unit(self.e2.value(t)))
    }

    pub fn m1(&self, a: &Hom0Element) -> Result<Hom1Coeffs, HomError> {
        a.check(self.dga)?;
        let f = self.dga.field();
        let mut out = Hom1Coeffs::default();
        for t in self.dga.loops() {
            let i = self.dga.generator(t).row;
            let c = f.mul(a.alpha[i], self.morse_coeff(t));
            if !c.is_zero() {
                out.loop_part.insert(t, c);
            }
        }
        let k: Vec<Elem> = self.dga.neg_chords().iter().map(|&b| a.k(b)).collect();
        let kpart = self.coeffs.mul_vec(f, &k);
        for (row, &e) in self.zero.iter().enumerate() {
            let g = self.dga.generator(e);
            let c = f.mul(a.alpha[g.col], self.e1.value(e))
                + f.mul(a.alpha[g.row], self.e2.value(e))
                + kpart[row];
            if !c.is_zero() {
                out.chord_part.insert(e, c);
            }
        }
        Ok(out)
    }

    pub fn is_cocycle(&self, a: &Hom0Element) -> Result<bool, HomError> {
        Ok(self.m1(a)?.is_zero())
    }

    /// Matrix of `m1` on `Hom^0`. Columns: `min_1..min_n`, then degree -1
    /// chords in [`Dga::neg_chords`] order. Rows: loop duals, then degree 0
    /// chord duals.
    pub fn m1_matrix(&self) -> Matrix {
        let n = self.dga.components();
        let loops = self.dga.loops();
        let negs = self.dga.neg_chords().len();
        let mut m = Matrix::zeros(loops.len() + self.zero.len(), n + negs);
        for (r, &t) in loops.iter().enumerate() {
            let i = self.dga.generator(t).row;
            m[(r, i)] = self.morse_coeff(t);
        }
        for (k, &e) in self.zero.iter().enumerate() {
            let r = loops.len() + k;
            let g = self.dga.generator(e);
            m[(r, g.col)] += self.e1.value(e);
            m[(r, g.row)] += self.e2.value(e);
            for j in 0..negs {
                m[(r, n + j)] = self.coeffs[(k, j)];
            }
        }
        m
    }

    /// A basis of the cocycles in `Hom^0`.
    pub fn cocycle_basis(&self) -> Vec<Hom0Element> {
        let n = self.dga.components();
        RowReduction::new(self.dga.field(), &self.m1_matrix())
            .kernel_basis()
            .into_iter()
            .map(|v| Hom0Element::new(self.dga, v[..n].to_vec(), &v[n..]))
            .collect()
    }
}

pub fn m1_hom0(
    dga: &Dga,
    e1: &Augmentation,
    e2: &Augmentation,
    a: &Hom0Element,
) -> Result<Hom1Coeffs, HomError> {
    HomSlice::new(dga, e1, e2).m1(a)
}

pub fn cocycle_test(dga: &Dga, e1: &Augmentation, e2: &Augmentation, a: &Hom0Element) -> Result<bool, HomError> {
    HomSlice::new(dga, e1, e2).is_cocycle(a)
}

/// Which argument of `m2` the minimum element occupies.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Side {
    /// `m2(sum alpha_i min_i, X)`
    Left,
    /// `m2(X, sum alpha_i min_i)`
    Right,
}

/// Product of `sum alpha_i min_i` with `X`. Minima multiply componentwise; a
/// chord dual `b^v` is scaled by `alpha` at its `r(b)` end from the left and
/// at its `c(b)` end from the right, so `sum min_i` is a two-sided unit.
pub fn m2_min_action(dga: &Dga, side: Side, alpha: &[Elem], x: &Hom0Element) -> Result<Hom0Element, HomError> {
    x.check(dga)?;
    if alpha.len() != dga.components() {
        return Err(HomError::AlphaLength {
            expected: dga.components(),
            found: alpha.len(),
        });
    }
    let f = dga.field();
    let new_alpha = alpha.iter().zip(&x.alpha).map(|(&a, &b)| f.mul(a, b)).collect();
    let kcoeffs = x
        .kcoeffs
        .iter()
        .map(|(&b, &v)| {
            let g = dga.generator(b);
            let end = match side {
                Side::Left => g.row,
                Side::Right => g.col,
            };
            (b, f.mul(alpha[end], v))
        })
        .filter(|(_, v)| !v.is_zero())
        .collect();
    Ok(Hom0Element {
        alpha: new_alpha,
        kcoeffs,
    })
}

/// The bilinearized chord complex: in Hom-degree `q` the duals of chords of
/// dga degree `q - 1`, with `maps[q]: C^q -> C^{q+1}`.
#[derive(Clone, Debug)]
pub struct BilinComplex {
    pub bases: BTreeMap<i32, Vec<GenId>>,
    pub maps: BTreeMap<i32, Matrix>,
}

impl BilinComplex {
    pub fn new(dga: &Dga, e1: &Augmentation, e2: &Augmentation) -> BilinComplex {
        let mut bases: BTreeMap<i32, Vec<GenId>> = BTreeMap::new();
        for c in dga.chords() {
            bases.entry(dga.generator(c).degree + 1).or_default().push(c);
        }
        let mut maps = BTreeMap::new();
        for (&q, src) in &bases {
            if let Some(dst) = bases.get(&(q + 1)) {
                maps.insert(q, bilinear_matrix(dga, e1, e2, dst, src));
            }
        }
        BilinComplex { bases, maps }
    }

    pub fn check_chain_law(&self, field: &Field) -> Result<(), HomError> {
        for (&q, m) in &self.maps {
            if let Some(next) = self.maps.get(&(q + 1)) {
                if !next.mul(field, m).is_zero() {
                    return Err(HomError::ChainLaw(q, q + 2));
                }
            }
        }
        Ok(())
    }

    /// `dim H^q` for every Hom-degree with a nonempty basis.
    pub fn dims(&self, field: &Field) -> BTreeMap<i32, usize> {
        let ranks: BTreeMap<i32, usize> = self.maps.iter().map(|(&q, m)| (q, rank(field, m))).collect();
        self.bases
            .iter()
            .map(|(&q, basis)| {
                let out = ranks.get(&q).copied().unwrap_or(0);
                let inc = ranks.get(&(q - 1)).copied().unwrap_or(0);
                (q, basis.len() - out - inc)
            })
            .collect()
    }
}

/// Bilinearized cohomology dimensions by Hom-degree; fails when the
/// differential does not square to zero.
pub fn bilinearized_cohomology_dims(
    dga: &Dga,
    e1: &Augmentation,
    e2: &Augmentation,
) -> Result<BTreeMap<i32, usize>, HomError> {
    let cx = BilinComplex::new(dga, e1, e2);
    cx.check_chain_law(dga.field())?;
    Ok(cx.dims(dga.field()))
}

/// `degree q: dim` lines.
pub fn format_dims(dims: &BTreeMap<i32, usize>) -> String {
    dims.iter().map(|(q, d)| format!("degree {q}: {d}\n")).collect()
}

/// `2t^2 + t^-1 + 1` style summary of a dimension map.
pub fn poincare_polynomial(dims: &BTreeMap<i32, usize>) -> String {
    let terms: Vec<String> = dims
        .iter()
        .rev()
        .filter(|(_, &d)| d > 0)
        .map(|(&q, &d)| {
            let coeff = if d == 1 && q != 0 { String::new() } else { d.to_string() };
            match q {
                0 => coeff,
                1 => format!("{coeff}t"),
                _ => format!("{coeff}t^{q}"),
            }
        })
        .collect();
    if terms.is_empty() {
        "0".to_string()
    } else {
        terms.join(" + ")
    }
}
