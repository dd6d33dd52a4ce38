//! Dilated augmentation homotopies.
//!
//! A dilated homotopy from `e1` to `e2` is a tuple `d` of per-component
//! units together with values `K(b)` on the degree -1 chords. `K` extends to
//! words by the twisted Leibniz rule `K(xy) = K(x) e2(y) + e1(x) K(y)` and
//! must satisfy, for every degree 0 chord `e` from component `c` to `r`,
//!
//! ```text
//! d_c e1(e) + d_r e2(e) + K(de) = 0
//! ```
//!
//! together with `e1 = e2` on every loop generator. For generators of any
//! other degree both sides vanish identically: a graded map kills the left
//! side, and `K` of a word of degree 0 or -2 needs a second letter of nonzero
//! degree, which `e1`/`e2` send to zero. Those conditions are therefore never
//! evaluated.
//!
//! With `d = (1, ..., 1)` this is an ordinary dga homotopy; there is no
//! separate type for that case.

use std::collections::BTreeMap;

use crate::augment::Augmentation;
use crate::dga::{Dga, GenId, GenKind, Poly};
use crate::error::HomotopyError;
use crate::gfield::{Elem, Field};
use crate::linalg::{Matrix, RowReduction};
use crate::par;

/// Per-component units `(d_1, ..., d_n)`.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct DilationTuple(Vec<Elem>);

impl DilationTuple {
    pub fn new(dga: &Dga, entries: Vec<Elem>) -> Result<DilationTuple, HomotopyError> {
        if entries.len() != dga.components() {
            return Err(HomotopyError::TupleLength {
                expected: dga.components(),
                found: entries.len(),
            });
        }
        for (i, e) in entries.iter().enumerate() {
            if !dga.field().contains(*e) {
                return Err(HomotopyError::Field(crate::FieldError::NotInField {
                    bits: e.bits() as u32,
                    m: dga.field().m(),
                }));
            }
            if e.is_zero() {
                return Err(HomotopyError::ZeroDilation(i + 1));
            }
        }
        Ok(DilationTuple(entries))
    }

    pub fn ones(n: usize) -> DilationTuple {
        DilationTuple(vec![Elem::ONE; n])
    }

    pub fn entries(&self) -> &[Elem] {
        &self.0
    }

    /// Entry for a 0-based component.
    #[inline]
    pub fn get(&self, component: usize) -> Elem {
        self.0[component]
    }

    pub fn is_trivial(&self) -> bool {
        self.0.iter().all(|&e| e == Elem::ONE)
    }

    pub fn inverse(&self, field: &Field) -> DilationTuple {
        DilationTuple(self.0.iter().map(|&e| field.inv_unit(e)).collect())
    }

    pub fn scaled(&self, field: &Field, s: Elem) -> DilationTuple {
        DilationTuple(self.0.iter().map(|&e| field.mul(e, s)).collect())
    }

    pub fn to_text(&self) -> String {
        let parts: Vec<String> = self.0.iter().map(|e| e.to_string()).collect();
        format!("({})", parts.join(", "))
    }

    /// All tuples with first entry 1, in lexicographic order of the
    /// remaining entries (field elements in bit order).
    fn normalized_count(field: &Field, n: usize) -> usize {
        let units = field.order() as usize - 1;
        units.pow(n.saturating_sub(1) as u32)
    }

    fn normalized(field: &Field, n: usize, mut index: usize) -> DilationTuple {
        let units = field.order() as usize - 1;
        let mut entries = vec![Elem::ONE; n];
        for slot in (1..n).rev() {
            let digit = index % units;
            index /= units;
            entries[slot] = field.elem(digit as u32 + 1).expect("unit index in range");
        }
        DilationTuple(entries)
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct DilatedHomotopy {
    pub d: DilationTuple,
    /// `K` on the degree -1 chords; absent keys read as zero.
    pub kvals: BTreeMap<GenId, Elem>,
}

impl DilatedHomotopy {
    /// `values` are aligned with [`Dga::neg_chords`].
    pub fn new(dga: &Dga, d: DilationTuple, values: &[Elem]) -> DilatedHomotopy {
        assert_eq!(values.len(), dga.neg_chords().len(), "one K value per degree -1 chord");
        DilatedHomotopy {
            d,
            kvals: dga.neg_chords().iter().copied().zip(values.iter().copied()).collect(),
        }
    }

    /// `(1, ..., 1)` with `K = 0`: the identity isomorphism.
    pub fn identity(dga: &Dga) -> DilatedHomotopy {
        DilatedHomotopy::new(dga, DilationTuple::ones(dga.components()), &vec![Elem::ZERO; dga.neg_chords().len()])
    }

    #[inline]
    pub fn k(&self, b: GenId) -> Elem {
        self.kvals.get(&b).copied().unwrap_or(Elem::ZERO)
    }

    pub fn is_plain(&self) -> bool {
        self.d.is_trivial()
    }

    pub fn k_is_zero(&self) -> bool {
        self.kvals.values().all(|v| v.is_zero())
    }

    /// `K` values in [`Dga::neg_chords`] order.
    pub fn k_vector(&self, dga: &Dga) -> Vec<Elem> {
        dga.neg_chords().iter().map(|&b| self.k(b)).collect()
    }

    /// `(s d, s K)`, again a witness whenever `(d, K)` is one.
    pub fn scaled(&self, field: &Field, s: Elem) -> DilatedHomotopy {
        DilatedHomotopy {
            d: self.d.scaled(field, s),
            kvals: self.kvals.iter().map(|(&b, &v)| (b, field.mul(v, s))).collect(),
        }
    }

    /// `d = (..)` followed by one `K b = elem` line per degree -1 chord.
    pub fn to_text(&self, dga: &Dga) -> String {
        let mut out = format!("d = {}\n", self.d.to_text());
        for &b in dga.neg_chords() {
            out.push_str(&format!("K {} = {}\n", dga.name(b), self.k(b)));
        }
        out
    }

    pub fn parse(dga: &Dga, text: &str) -> Result<DilatedHomotopy, HomotopyError> {
        let (alpha, kvals) = parse_coefficients(dga, text, "d")
            .map_err(|e| match e {
                CoeffError::Syntax(s) => HomotopyError::Syntax(s),
                CoeffError::NotNegative(s) => HomotopyError::NotNegativeChord(s),
                CoeffError::Field(f) => HomotopyError::Field(f),
            })?;
        let d = alpha.ok_or_else(|| HomotopyError::Syntax("missing `d = (...)` line".into()))?;
        let d = DilationTuple::new(dga, d)?;
        let mut h = DilatedHomotopy::new(dga, d, &vec![Elem::ZERO; dga.neg_chords().len()]);
        h.kvals.extend(kvals);
        Ok(h)
    }

    fn dense_k(&self, dga: &Dga) -> Result<Vec<Elem>, HomotopyError> {
        let mut dense = vec![Elem::ZERO; dga.generators().len()];
        for (&b, &v) in &self.kvals {
            let g = dga.generator(b);
            if !(g.kind == GenKind::Chord && g.degree == -1) {
                return Err(HomotopyError::NotNegativeChord(g.name.clone()));
            }
            dense[b.index()] = v;
        }
        Ok(dense)
    }
}

pub(crate) enum CoeffError {
    Syntax(String),
    NotNegative(String),
    Field(crate::FieldError),
}

/// The optional tuple and the `K` assignments read from a witness file.
pub(crate) type Coefficients = (Option<Vec<Elem>>, Vec<(GenId, Elem)>);

/// Shared reader for `<key> = (a, b, ..)` plus `K name = elem` lines.
pub(crate) fn parse_coefficients(
    dga: &Dga,
    text: &str,
    key: &str,
) -> Result<Coefficients, CoeffError> {
    let f = dga.field();
    let mut tuple = None;
    let mut kvals = Vec::new();
    for raw in text.lines() {
        let line = raw.split('#').next().unwrap_or("").trim();
        if line.is_empty() {
            continue;
        }
        let (lhs, rhs) = line
            .split_once('=')
            .ok_or_else(|| CoeffError::Syntax(line.to_string()))?;
        let lhs: Vec<&str> = lhs.split_whitespace().collect();
        let rhs = rhs.trim();
        match lhs.as_slice() {
            [k] if *k == key => {
                let inner = rhs
                    .strip_prefix('(')
                    .and_then(|r| r.strip_suffix(')'))
                    .ok_or_else(|| CoeffError::Syntax(line.to_string()))?;
                let entries = inner
                    .split(',')
                    .map(|s| f.parse_elem(s))
                    .collect::<Result<Vec<_>, _>>()
                    .map_err(CoeffError::Field)?;
                tuple = Some(entries);
            }
            ["K", name] => {
                let id = dga
                    .id(name)
                    .ok_or_else(|| CoeffError::Syntax(line.to_string()))?;
                let g = dga.generator(id);
                if !(g.kind == GenKind::Chord && g.degree == -1) {
                    return Err(CoeffError::NotNegative(name.to_string()));
                }
                kvals.push((id, f.parse_elem(rhs).map_err(CoeffError::Field)?));
            }
            _ => return Err(CoeffError::Syntax(line.to_string())),
        }
    }
    Ok((tuple, kvals))
}

/// Calls `visit(letter, coeff * e1(prefix) * e2(suffix))` for every letter
/// occurrence in every term of `p` where that product is nonzero.
#[inline]
pub(crate) fn for_each_linear_term(
    dga: &Dga,
    v1: &[Elem],
    v2: &[Elem],
    p: &Poly,
    mut visit: impl FnMut(GenId, Elem),
) {
    let f = dga.field();
    let mut suffix = Vec::new();
    for (w, c) in p.terms() {
        let letters = w.letters();
        let n = letters.len();
        suffix.clear();
        suffix.resize(n + 1, Elem::ONE);
        for t in (0..n).rev() {
            suffix[t] = f.mul(v2[letters[t].index()], suffix[t + 1]);
        }
        let mut prefix = c;
        for t in 0..n {
            let s = f.mul(prefix, suffix[t + 1]);
            if !s.is_zero() {
                visit(letters[t], s);
            }
            prefix = f.mul(prefix, v1[letters[t].index()]);
            if prefix.is_zero() {
                break;
            }
        }
    }
}

/// `K(p)` for the `(e1, e2)`-derivation determined by `kvals` on degree -1
/// chords.
pub fn extend_k(
    dga: &Dga,
    e1: &Augmentation,
    e2: &Augmentation,
    kvals: &BTreeMap<GenId, Elem>,
    p: &Poly,
) -> Elem {
    let mut dense = vec![Elem::ZERO; dga.generators().len()];
    for (&b, &v) in kvals {
        let g = dga.generator(b);
        if g.is_chord() && g.degree == -1 {
            dense[b.index()] = v;
        }
    }
    extend_k_dense(dga, e1, e2, &dense, p)
}

fn extend_k_dense(dga: &Dga, e1: &Augmentation, e2: &Augmentation, k: &[Elem], p: &Poly) -> Elem {
    let f = dga.field();
    let mut acc = Elem::ZERO;
    for_each_linear_term(dga, e1.values(), e2.values(), p, |x, s| {
        acc += f.mul(k[x.index()], s);
    });
    acc
}

/// Matrix of bilinearized coefficients `c_{row, col}`: the sum over
/// occurrences of `col` in `d(row)` of `e1(prefix) e2(suffix)`.
pub fn bilinear_matrix(
    dga: &Dga,
    e1: &Augmentation,
    e2: &Augmentation,
    rows: &[GenId],
    cols: &[GenId],
) -> Matrix {
    let mut col_index = vec![None; dga.generators().len()];
    for (j, c) in cols.iter().enumerate() {
        col_index[c.index()] = Some(j);
    }
    let mut m = Matrix::zeros(rows.len(), cols.len());
    for (i, &r) in rows.iter().enumerate() {
        for_each_linear_term(dga, e1.values(), e2.values(), dga.diff(r), |x, s| {
            if let Some(j) = col_index[x.index()] {
                m[(i, j)] += s;
            }
        });
    }
    m
}

/// Outcome of checking a candidate homotopy.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Verdict {
    Holds,
    /// The first generator (loop or degree 0 chord) whose condition fails.
    FailsAt(GenId),
}

impl Verdict {
    pub fn holds(self) -> bool {
        self == Verdict::Holds
    }
}

/// Checks every condition on `h` as a dilated homotopy from `e1` to `e2`.
pub fn is_dilated_homotopy(
    dga: &Dga,
    e1: &Augmentation,
    e2: &Augmentation,
    h: &DilatedHomotopy,
) -> Result<Verdict, HomotopyError> {
    let f = dga.field();
    DilationTuple::new(dga, h.d.entries().to_vec())?;
    let k = h.dense_k(dga)?;
    for id in dga.loops() {
        if e1.value(id) != e2.value(id) {
            return Ok(Verdict::FailsAt(id));
        }
    }
    for e in dga.zero_chords() {
        let g = dga.generator(e);
        let lhs = f.mul(h.d.get(g.col), e1.value(e)) + f.mul(h.d.get(g.row), e2.value(e));
        if lhs != extend_k_dense(dga, e1, e2, &k, dga.diff(e)) {
            return Ok(Verdict::FailsAt(e));
        }
    }
    Ok(Verdict::Holds)
}

/// Which witnesses a search may return.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum SearchMode {
    /// Any dilation tuple and any `K`.
    Full,
    /// `d = (1, ..., 1)`: plain dga homotopies only.
    PlainOnly,
    /// `K = 0`: pure dilations only.
    DilationOnly,
}

/// Precomputed data for deciding isomorphism of one ordered pair.
pub struct PairSearch<'a> {
    dga: &'a Dga,
    e1: &'a Augmentation,
    e2: &'a Augmentation,
    zero: Vec<GenId>,
    reduction: RowReduction,
}

impl<'a> PairSearch<'a> {
    pub fn new(dga: &'a Dga, e1: &'a Augmentation, e2: &'a Augmentation) -> PairSearch<'a> {
        let zero = dga.zero_chords();
        let coeffs = bilinear_matrix(dga, e1, e2, &zero, dga.neg_chords());
        PairSearch {
            dga,
            e1,
            e2,
            reduction: RowReduction::new(dga.field(), &coeffs),
            zero,
        }
    }

    fn loops_agree(&self) -> bool {
        self.dga
            .loops()
            .into_iter()
            .all(|id| self.e1.value(id) == self.e2.value(id))
    }

    fn rhs(&self, d: &DilationTuple) -> Vec<Elem> {
        let f = self.dga.field();
        self.zero
            .iter()
            .map(|&e| {
                let g = self.dga.generator(e);
                f.mul(d.get(g.col), self.e1.value(e)) + f.mul(d.get(g.row), self.e2.value(e))
            })
            .collect()
    }

    /// Tries one dilation tuple; free `K` variables are set to zero.
    pub fn try_tuple(&self, d: &DilationTuple, mode: SearchMode) -> Option<DilatedHomotopy> {
        let rhs = self.rhs(d);
        let kvec = match mode {
            SearchMode::DilationOnly => {
                if rhs.iter().any(|e| !e.is_zero()) {
                    return None;
                }
                vec![Elem::ZERO; self.dga.neg_chords().len()]
            }
            _ => self.reduction.solve(self.dga.field(), &rhs)?,
        };
        Some(DilatedHomotopy::new(self.dga, d.clone(), &kvec))
    }

    /// The first witness in canonical order: tuples `(1, d_2, .., d_n)`
    /// lexicographically, free `K` variables zero.
    pub fn find(&self, mode: SearchMode) -> Option<DilatedHomotopy> {
        if !self.loops_agree() {
            return None;
        }
        let n = self.dga.components();
        let f = self.dga.field();
        if mode == SearchMode::PlainOnly {
            return self.try_tuple(&DilationTuple::ones(n), mode);
        }
        // scaling (d, K) by a unit preserves every condition, so d_1 = 1 is
        // no loss of generality
        let count = DilationTuple::normalized_count(f, n);
        par::find_map_first(count, |i| {
            self.try_tuple(&DilationTuple::normalized(f, n, i), mode)
        })
    }
}

/// Decides whether `e1` and `e2` are isomorphic, returning the canonical
/// witness when they are.
pub fn find_dilated_homotopy(dga: &Dga, e1: &Augmentation, e2: &Augmentation) -> Option<DilatedHomotopy> {
    PairSearch::new(dga, e1, e2).find(SearchMode::Full)
}

pub fn find_with_mode(
    dga: &Dga,
    e1: &Augmentation,
    e2: &Augmentation,
    mode: SearchMode,
) -> Option<DilatedHomotopy> {
    PairSearch::new(dga, e1, e2).find(mode)
}

/// `e'(x) = d_r(x) d_c(x)^-1 e(x)`; loops and pure chords are unchanged.
pub fn apply_dilation(dga: &Dga, e: &Augmentation, d: &DilationTuple) -> Augmentation {
    let f = dga.field();
    let values = dga
        .ids()
        .map(|id| {
            let g = dga.generator(id);
            let v = e.value(id);
            if g.row == g.col || v.is_zero() {
                v
            } else {
                f.mul(f.mul(d.get(g.row), f.inv_unit(d.get(g.col))), v)
            }
        })
        .collect();
    Augmentation::from_values_unchecked(values)
}

/// Composes a plain homotopy `e1 -> e2` with the dilation by `d`, giving
/// `e3(x) = d_r^-1 d_c e2(x)` and the dilated homotopy `(d, K)` from `e1` to
/// `e3` with `K(b) = d_c(b) kplain(b)`.
pub fn compose_homotopy_dilation(
    dga: &Dga,
    e1: &Augmentation,
    e2: &Augmentation,
    kplain: &DilatedHomotopy,
    d: &DilationTuple,
) -> Result<(Augmentation, DilatedHomotopy), HomotopyError> {
    let plain_ok = kplain.is_plain() && is_dilated_homotopy(dga, e1, e2, kplain)?.holds();
    if !plain_ok {
        return Err(HomotopyError::Invalid {
            kind: "plain",
            generator: failing_name(dga, e1, e2, kplain),
        });
    }
    DilationTuple::new(dga, d.entries().to_vec())?;
    let f = dga.field();
    let e3 = apply_dilation(dga, e2, &d.inverse(f));
    let kvals = dga
        .neg_chords()
        .iter()
        .map(|&b| (b, f.mul(d.get(dga.generator(b).col), kplain.k(b))))
        .collect();
    Ok((e3, DilatedHomotopy { d: d.clone(), kvals }))
}

/// Splits a dilated homotopy `e1 -> e2` into a plain homotopy `e1 -> e_mid`
/// followed by a dilation, where `e_mid(x) = d_r d_c^-1 e2(x)` and
/// `kplain(b) = d_c(b)^-1 K(b)`. Composing the parts gives back `h`.
pub fn decompose_dilated_homotopy(
    dga: &Dga,
    e1: &Augmentation,
    e2: &Augmentation,
    h: &DilatedHomotopy,
) -> Result<(Augmentation, DilatedHomotopy, DilationTuple), HomotopyError> {
    if !is_dilated_homotopy(dga, e1, e2, h)?.holds() {
        return Err(HomotopyError::Invalid {
            kind: "dilated",
            generator: failing_name(dga, e1, e2, h),
        });
    }
    let f = dga.field();
    let mid = apply_dilation(dga, e2, &h.d);
    let kvals = dga
        .neg_chords()
        .iter()
        .map(|&b| (b, f.mul(f.inv_unit(h.d.get(dga.generator(b).col)), h.k(b))))
        .collect();
    let kplain = DilatedHomotopy {
        d: DilationTuple::ones(dga.components()),
        kvals,
    };
    Ok((mid, kplain, h.d.clone()))
}

fn failing_name(dga: &Dga, e1: &Augmentation, e2: &Augmentation, h: &DilatedHomotopy) -> String {
    match is_dilated_homotopy(dga, e1, e2, h) {
        Ok(Verdict::FailsAt(g)) => dga.name(g).to_string(),
        Ok(Verdict::Holds) => "d".to_string(),
        Err(e) => e.to_string(),
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::augment::enumerate_augmentations;

    const DGA_A: &str = "field 2^2\ncomponents 2\ngen e 0 2 1 chord\ndiff e = 0\n";
    const DGA_B: &str = "field 2^2\ncomponents 1\ngen e 0 1 1 chord\ngen b -1 1 1 chord\ndiff e = b\ndiff b = 0\n";
    const DGA_E: &str = "field 2^2\ncomponents 2\ngen e12 0 2 1 chord\ngen b12 -1 2 1 chord\ndiff e12 = b12\ndiff b12 = 0\n";

    fn aug(d: &Dga, text: &str) -> Augmentation {
        Augmentation::parse(d, text).unwrap()
    }

    fn el(d: &Dga, s: &str) -> Elem {
        d.field().parse_elem(s).unwrap()
    }

    #[test]
    fn extend_k_examples() {
        let d = Dga::parse(DGA_B).unwrap();
        let b = d.id("b").unwrap();
        let e1 = aug(&d, "e=0");
        let kv: BTreeMap<_, _> = [(b, Elem::ONE)].into();
        assert_eq!(extend_k(&d, &e1, &e1, &kv, &Poly::one()), Elem::ZERO);
        assert_eq!(extend_k(&d, &e1, &e1, &kv, d.diff(d.id("e").unwrap())), Elem::ONE);

        let text = "field 2^2\ncomponents 1\ngen t 0 1 1 loop\ngen b -1 1 1 chord\ndiff b = 0\n";
        let d = Dga::parse(text).unwrap();
        let b = d.id("b").unwrap();
        let e1 = aug(&d, "t=g");
        let e2 = aug(&d, "t=1");
        let kv: BTreeMap<_, _> = [(b, el(&d, "g"))].into();
        let p = d.parse_poly("t.b").unwrap();
        assert_eq!(extend_k(&d, &e1, &e2, &kv, &p), el(&d, "g+1"));
    }

    #[test]
    fn checker_examples() {
        let d = Dga::parse(DGA_B).unwrap();
        let (e0, e1) = (aug(&d, "e=0"), aug(&d, "e=1"));
        let id = DilatedHomotopy::identity(&d);
        assert!(is_dilated_homotopy(&d, &e0, &e0, &id).unwrap().holds());
        let h = DilatedHomotopy::new(&d, DilationTuple::ones(1), &[Elem::ONE]);
        assert!(is_dilated_homotopy(&d, &e0, &e1, &h).unwrap().holds());
        assert_eq!(
            is_dilated_homotopy(&d, &e0, &e1, &id).unwrap(),
            Verdict::FailsAt(d.id("e").unwrap())
        );

        let d = Dga::parse(DGA_A).unwrap();
        let (e1, e2) = (aug(&d, "e=1"), aug(&d, "e=g"));
        let tuple = DilationTuple::new(&d, vec![Elem::ONE, el(&d, "g+1")]).unwrap();
        let h = DilatedHomotopy::new(&d, tuple, &[]);
        assert!(is_dilated_homotopy(&d, &e1, &e2, &h).unwrap().holds());
    }

    #[test]
    fn checker_rejects_misplaced_k() {
        let d = Dga::parse(DGA_B).unwrap();
        let e0 = aug(&d, "e=0");
        let mut h = DilatedHomotopy::identity(&d);
        h.kvals.insert(d.id("e").unwrap(), Elem::ONE);
        assert!(matches!(
            is_dilated_homotopy(&d, &e0, &e0, &h),
            Err(HomotopyError::NotNegativeChord(_))
        ));
        assert!(DilationTuple::new(&d, vec![Elem::ZERO]).is_err());
        assert!(DilationTuple::new(&d, vec![Elem::ONE, Elem::ONE]).is_err());
    }

    #[test]
    fn find_examples() {
        let gf2 = Field::new(1).unwrap();
        let d = Dga::parse_with_field(DGA_A, Some(gf2)).unwrap();
        assert!(find_dilated_homotopy(&d, &aug(&d, "e=1"), &aug(&d, "e=0")).is_none());

        let d = Dga::parse(DGA_A).unwrap();
        let h = find_dilated_homotopy(&d, &aug(&d, "e=1"), &aug(&d, "e=g")).unwrap();
        assert_eq!(h.d.entries(), &[Elem::ONE, el(&d, "g+1")]);
        assert!(h.kvals.is_empty());

        for e in enumerate_augmentations(&d) {
            let h = find_dilated_homotopy(&d, &e, &e).unwrap();
            assert_eq!(h, DilatedHomotopy::identity(&d));
        }
    }

    #[test]
    fn modes() {
        let d = Dga::parse(DGA_A).unwrap();
        let (e1, e2) = (aug(&d, "e=1"), aug(&d, "e=g"));
        assert!(find_with_mode(&d, &e1, &e2, SearchMode::PlainOnly).is_none());
        assert!(find_with_mode(&d, &e1, &e2, SearchMode::DilationOnly).is_some());
        let d = Dga::parse(DGA_B).unwrap();
        let (e1, e2) = (aug(&d, "e=1"), aug(&d, "e=g"));
        assert!(find_with_mode(&d, &e1, &e2, SearchMode::DilationOnly).is_none());
        let h = find_with_mode(&d, &e1, &e2, SearchMode::PlainOnly).unwrap();
        assert_eq!(h.k_vector(&d), vec![el(&d, "g+1")]);
    }

    #[test]
    fn dilation_examples() {
        let d = Dga::parse(DGA_A).unwrap();
        let e = aug(&d, "e=g");
        let tuple = DilationTuple::new(&d, vec![Elem::ONE, el(&d, "g")]).unwrap();
        assert_eq!(apply_dilation(&d, &e, &tuple).to_text(&d), "e=g+1");
        assert_eq!(apply_dilation(&d, &e, &DilationTuple::ones(2)), e);

        let d = Dga::parse(DGA_B).unwrap();
        let e = aug(&d, "e=g");
        let tuple = DilationTuple::new(&d, vec![el(&d, "g")]).unwrap();
        assert_eq!(apply_dilation(&d, &e, &tuple), e);
    }

    #[test]
    fn compose_and_decompose_dga_e() {
        let d = Dga::parse(DGA_E).unwrap();
        let (e1, e2) = (aug(&d, "e12=1"), aug(&d, "e12=g"));
        let kplain = find_with_mode(&d, &e1, &e2, SearchMode::PlainOnly).unwrap();
        assert_eq!(kplain.k_vector(&d), vec![el(&d, "g+1")]);
        let tuple = DilationTuple::new(&d, vec![Elem::ONE, el(&d, "g")]).unwrap();
        let (e3, h) = compose_homotopy_dilation(&d, &e1, &e2, &kplain, &tuple).unwrap();
        assert_eq!(h.k_vector(&d), kplain.k_vector(&d));
        assert_eq!(e3.value(d.id("e12").unwrap()), d.field().mul(d.field().inv_unit(el(&d, "g")), el(&d, "g")));
        assert!(is_dilated_homotopy(&d, &e1, &e3, &h).unwrap().holds());

        let (mid, kp, dd) = decompose_dilated_homotopy(&d, &e1, &e3, &h).unwrap();
        assert_eq!(mid, e2);
        assert_eq!(kp, kplain);
        assert_eq!(dd, tuple);
    }

    #[test]
    fn decompose_dga_a() {
        let d = Dga::parse(DGA_A).unwrap();
        let (e1, e2) = (aug(&d, "e=1"), aug(&d, "e=g"));
        let h = DilatedHomotopy::new(&d, DilationTuple::new(&d, vec![Elem::ONE, el(&d, "g+1")]).unwrap(), &[]);
        let (mid, kplain, _) = decompose_dilated_homotopy(&d, &e1, &e2, &h).unwrap();
        assert_eq!(mid, e1);
        assert!(kplain.k_is_zero());
        assert!(is_dilated_homotopy(&d, &e1, &mid, &kplain).unwrap().holds());
    }

    #[test]
    fn compose_rejects_bad_plain() {
        let d = Dga::parse(DGA_B).unwrap();
        let (e1, e2) = (aug(&d, "e=1"), aug(&d, "e=g"));
        let bad = DilatedHomotopy::identity(&d);
        assert!(compose_homotopy_dilation(&d, &e1, &e2, &bad, &DilationTuple::ones(1)).is_err());
    }

    #[test]
    fn witness_text_round_trip() {
        let d = Dga::parse(DGA_E).unwrap();
        let h = DilatedHomotopy::new(&d, DilationTuple::new(&d, vec![Elem::ONE, el(&d, "g+1")]).unwrap(), &[el(&d, "g")]);
        let text = h.to_text(&d);
        assert_eq!(text, "d = (1, g+1)\nK b12 = g\n");
        assert_eq!(DilatedHomotopy::parse(&d, &text).unwrap(), h);
        assert!(matches!(
            DilatedHomotopy::parse(&d, "d = (1, 1)\nK e12 = 1\n"),
            Err(HomotopyError::NotNegativeChord(_))
        ));
        assert!(DilatedHomotopy::parse(&d, "K b12 = 1\n").is_err());
    }

    #[test]
    fn vacuous_conditions_vanish() {
        // K(dx) = 0 for generators of degree != 0, for any augmentations and K
        let text = "field 2^2\ncomponents 1\ngen t 0 1 1 loop\ngen x 0 1 1 chord\ngen a 1 1 1 chord\ngen b -1 1 1 chord\ngen c -1 1 1 chord\ngen z -2 1 1 chord\n\
diff x = b + c\ndiff a = 1 + t\ndiff b = z\ndiff c = z\ndiff z = 0\n";
        let d = Dga::parse(text).unwrap();
        assert!(d.validate().is_valid(), "{}", d.validate());
        let augs = enumerate_augmentations(&d);
        assert!(!augs.is_empty());
        for e1 in &augs {
            for e2 in &augs {
                for k in d.field().elements() {
                    let kv: BTreeMap<_, _> = d.neg_chords().iter().map(|&b| (b, k)).collect();
                    for id in d.ids() {
                        if d.generator(id).degree != 0 {
                            assert!(extend_k(&d, e1, e2, &kv, d.diff(id)).is_zero());
                        }
                    }
                }
            }
        }
    }

    #[test]
    fn normalized_tuple_order() {
        let f = Field::new(2).unwrap();
        let tuples: Vec<_> = (0..DilationTuple::normalized_count(&f, 3))
            .map(|i| DilationTuple::normalized(&f, 3, i).to_text())
            .collect();
        assert_eq!(tuples.len(), 9);
        assert_eq!(tuples[0], "(1, 1, 1)");
        assert_eq!(tuples[1], "(1, 1, g)");
        assert_eq!(tuples[3], "(1, g, 1)");
        assert_eq!(tuples[8], "(1, g+1, g+1)");
    }
}
