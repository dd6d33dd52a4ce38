//! Link-graded semi-free dgas over GF(2^m).
//!
//! The algebra is the free product of the free algebra on chords with one
//! free group algebra per component, generated by loop generators `t` and
//! their inverses `t^-1` (rewrite rule `t.t^-1 = t^-1.t = 1`). Every
//! generator carries an integer degree and a pair of components: `col` is
//! the component a chord starts on, `row` the one it ends on. A word
//! `w_1 . w_2 ... w_k` is composable when `col(w_t) == row(w_{t+1})`.
//!
//! Components are 0-based in memory and 1-based in text.
//!
//! # File format
//!
//! ```text
//! field 2^2
//! components 2
//! gen t  0  1 1 loop        # name degree row col kind
//! gen e  0  2 1 chord
//! gen b -1  2 1 chord
//! energy b 1.5              # optional
//! diff e = b + (g)*b.t
//! diff b = 0
//! ```

use std::collections::{BTreeMap, HashMap};
use std::fmt;

use num_rational::Ratio;

use crate::error::{AugError, DgaError};
use crate::gfield::{Elem, Field};

pub type Energy = Ratio<i64>;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct GenId(pub u32);

impl GenId {
    #[inline]
    pub fn index(self) -> usize {
        self.0 as usize
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum GenKind {
    Chord,
    Loop,
    LoopInverse,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Generator {
    pub name: String,
    pub degree: i32,
    /// Component the generator ends on (0-based).
    pub row: usize,
    /// Component the generator starts on (0-based).
    pub col: usize,
    pub kind: GenKind,
    pub energy: Option<Energy>,
    /// For loops and loop inverses, the other half of the pair.
    pub inverse: Option<GenId>,
}

impl Generator {
    pub fn is_chord(&self) -> bool {
        self.kind == GenKind::Chord
    }

    pub fn is_loop(&self) -> bool {
        self.kind == GenKind::Loop
    }

    /// A chord between two different components.
    pub fn is_mixed(&self) -> bool {
        self.row != self.col
    }
}

/// A monomial. The empty word is the unit.
///
/// Words order by length first, then lexicographically by generator index.
#[derive(Clone, Debug, Default, PartialEq, Eq, Hash)]
pub struct Word(Vec<GenId>);

impl Word {
    pub fn unit() -> Word {
        Word(Vec::new())
    }

    pub fn letters(&self) -> &[GenId] {
        &self.0
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn is_unit(&self) -> bool {
        self.0.is_empty()
    }
}

impl Ord for Word {
    fn cmp(&self, other: &Self) -> std::cmp::Ordering {
        self.0
            .len()
            .cmp(&other.0.len())
            .then_with(|| self.0.cmp(&other.0))
    }
}

impl PartialOrd for Word {
    fn partial_cmp(&self, other: &Self) -> Option<std::cmp::Ordering> {
        Some(self.cmp(other))
    }
}

/// Linear combination of words with nonzero coefficients.
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct Poly {
    terms: BTreeMap<Word, Elem>,
}

impl Poly {
    pub fn zero() -> Poly {
        Poly::default()
    }

    pub fn one() -> Poly {
        Poly::monomial(Word::unit(), Elem::ONE)
    }

    pub fn monomial(w: Word, c: Elem) -> Poly {
        let mut p = Poly::zero();
        p.add_term(w, c);
        p
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_empty(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn add_term(&mut self, w: Word, c: Elem) {
        if c.is_zero() {
            return;
        }
        let entry = self.terms.entry(w);
        match entry {
            std::collections::btree_map::Entry::Vacant(v) => {
                v.insert(c);
            }
            std::collections::btree_map::Entry::Occupied(mut o) => {
                let s = *o.get() + c;
                if s.is_zero() {
                    o.remove();
                } else {
                    *o.get_mut() = s;
                }
            }
        }
    }

    pub fn add_poly(&mut self, other: &Poly) {
        for (w, &c) in &other.terms {
            self.add_term(w.clone(), c);
        }
    }

    /// Terms in canonical order.
    pub fn terms(&self) -> impl Iterator<Item = (&Word, Elem)> {
        self.terms.iter().map(|(w, &c)| (w, c))
    }

    pub fn coeff(&self, w: &Word) -> Elem {
        self.terms.get(w).copied().unwrap_or(Elem::ZERO)
    }
}

#[derive(Clone, Debug)]
pub struct Dga {
    field: Field,
    components: usize,
    gens: Vec<Generator>,
    diff: Vec<Poly>,
    names: HashMap<String, GenId>,
    neg_order: Vec<GenId>,
}

impl PartialEq for Dga {
    fn eq(&self, other: &Self) -> bool {
        self.field == other.field
            && self.components == other.components
            && self.gens == other.gens
            && self.diff == other.diff
    }
}

impl Dga {
    pub fn parse(text: &str) -> Result<Dga, DgaError> {
        parse::parse(text, None)
    }

    /// Parse, reading every coefficient in `field` instead of the field the
    /// file declares.
    pub fn parse_with_field(text: &str, field: Option<Field>) -> Result<Dga, DgaError> {
        parse::parse(text, field)
    }

    pub fn field(&self) -> &Field {
        &self.field
    }

    pub fn components(&self) -> usize {
        self.components
    }

    pub fn generators(&self) -> &[Generator] {
        &self.gens
    }

    pub fn ids(&self) -> impl Iterator<Item = GenId> + '_ {
        (0..self.gens.len() as u32).map(GenId)
    }

    pub fn generator(&self, id: GenId) -> &Generator {
        &self.gens[id.index()]
    }

    pub fn name(&self, id: GenId) -> &str {
        &self.gens[id.index()].name
    }

    pub fn id(&self, name: &str) -> Option<GenId> {
        self.names.get(name).copied()
    }

    pub fn diff(&self, id: GenId) -> &Poly {
        &self.diff[id.index()]
    }

    /// Chords of the given degree, in file order.
    pub fn chords_of_degree(&self, degree: i32) -> Vec<GenId> {
        self.ids()
            .filter(|&id| {
                let g = self.generator(id);
                g.is_chord() && g.degree == degree
            })
            .collect()
    }

    /// Degree -1 chords in energy order (file order when energies are not
    /// given for all of them). This is the order of `K` values everywhere.
    pub fn neg_chords(&self) -> &[GenId] {
        &self.neg_order
    }

    pub fn zero_chords(&self) -> Vec<GenId> {
        self.chords_of_degree(0)
    }

    /// Loop generators (not their inverses).
    pub fn loops(&self) -> Vec<GenId> {
        self.ids().filter(|&id| self.generator(id).is_loop()).collect()
    }

    pub fn chords(&self) -> Vec<GenId> {
        self.ids().filter(|&id| self.generator(id).is_chord()).collect()
    }

    /// Builds a word from letters, cancelling adjacent loop/inverse pairs.
    pub fn reduce(&self, letters: impl IntoIterator<Item = GenId>) -> Word {
        let mut out: Vec<GenId> = Vec::new();
        for x in letters {
            match (out.last(), self.gens[x.index()].inverse) {
                (Some(&last), Some(inv)) if last == inv => {
                    out.pop();
                }
                _ => out.push(x),
            }
        }
        Word(out)
    }

    pub fn word_degree(&self, w: &Word) -> i32 {
        w.0.iter().map(|x| self.gens[x.index()].degree).sum()
    }

    /// `(row, col)` of a nonempty word; `None` for the unit.
    pub fn word_ends(&self, w: &Word) -> Option<(usize, usize)> {
        let first = w.0.first()?;
        let last = w.0.last()?;
        Some((self.gens[first.index()].row, self.gens[last.index()].col))
    }

    pub fn is_composable(&self, w: &Word) -> bool {
        w.0.windows(2)
            .all(|p| self.gens[p[0].index()].col == self.gens[p[1].index()].row)
    }

    pub fn fmt_word(&self, w: &Word) -> String {
        if w.is_unit() {
            return "1".to_string();
        }
        w.0.iter()
            .map(|x| self.gens[x.index()].name.as_str())
            .collect::<Vec<_>>()
            .join(".")
    }

    pub fn fmt_poly(&self, p: &Poly) -> String {
        if p.is_zero() {
            return "0".to_string();
        }
        p.terms()
            .map(|(w, c)| {
                if c == Elem::ONE {
                    self.fmt_word(w)
                } else {
                    format!("({})*{}", self.field.fmt_elem(c), self.fmt_word(w))
                }
            })
            .collect::<Vec<_>>()
            .join(" + ")
    }

    /// Parses a polynomial over this dga's generators (the right-hand side
    /// syntax of `diff` lines).
    pub fn parse_poly(&self, text: &str) -> Result<Poly, DgaError> {
        parse::parse_poly_text(self, text, 1, 0)
    }

    /// Leibniz expansion `d(w) = sum_t w_<t . d(w_t) . w_>t` (characteristic
    /// 2, no signs), reduced and canonically ordered.
    pub fn boundary(&self, p: &Poly) -> Poly {
        let mut out = Poly::zero();
        for (w, c) in p.terms() {
            for t in 0..w.len() {
                let dx = &self.diff[w.0[t].index()];
                for (dw, dc) in dx.terms() {
                    let letters = w.0[..t]
                        .iter()
                        .chain(dw.0.iter())
                        .chain(w.0[t + 1..].iter())
                        .copied();
                    out.add_term(self.reduce(letters), self.field.mul(c, dc));
                }
            }
        }
        out
    }

    /// Product of letter values; the unit word evaluates to 1.
    #[inline]
    pub fn eval_word(&self, values: &[Elem], w: &Word) -> Elem {
        let mut acc = Elem::ONE;
        for x in &w.0 {
            let v = values[x.index()];
            if v.is_zero() {
                return Elem::ZERO;
            }
            acc = self.field.mul(acc, v);
        }
        acc
    }

    #[inline]
    pub fn eval_poly(&self, values: &[Elem], p: &Poly) -> Elem {
        p.terms().fold(Elem::ZERO, |acc, (w, c)| {
            acc + self.field.mul(c, self.eval_word(values, w))
        })
    }

    /// Evaluates the algebra map determined by `values` (one per generator,
    /// indexed by [`GenId`]) on `p`.
    pub fn eval_map(&self, values: &[Elem], p: &Poly) -> Result<Elem, AugError> {
        if values.len() < self.gens.len() {
            return Err(AugError::MissingValue(
                self.gens[values.len()].name.clone(),
            ));
        }
        Ok(self.eval_poly(values, p))
    }

    /// Checks every structural invariant plus `d^2 = 0` and the energy
    /// filtration, collecting all failures.
    pub fn validate(&self) -> ValidationReport {
        let mut issues = Vec::new();
        for id in self.ids() {
            let g = self.generator(id);
            let dx = self.diff(id);
            if g.kind != GenKind::Chord && !dx.is_zero() {
                issues.push(Issue::LoopDifferential {
                    generator: g.name.clone(),
                });
            }
            for (w, _) in dx.terms() {
                if !self.is_composable(w) {
                    issues.push(Issue::NotComposable {
                        generator: g.name.clone(),
                        word: self.fmt_word(w),
                    });
                    continue;
                }
                if self.word_degree(w) != g.degree - 1 {
                    issues.push(Issue::Degree {
                        generator: g.name.clone(),
                        word: self.fmt_word(w),
                    });
                }
                let ends = self.word_ends(w).unwrap_or((g.row, g.row));
                if ends != (g.row, g.col) {
                    issues.push(Issue::Grading {
                        generator: g.name.clone(),
                        word: self.fmt_word(w),
                    });
                }
            }
        }
        for id in self.ids() {
            let dd = self.boundary(self.diff(id));
            let first = dd.terms().next().map(|(w, _)| self.fmt_word(w));
            if let Some(word) = first {
                issues.push(Issue::SquareNonzero {
                    generator: self.name(id).to_string(),
                    word,
                });
            }
        }
        issues.extend(self.energy_issues());
        ValidationReport { issues }
    }

    fn energy_issues(&self) -> Vec<Issue> {
        let chords = self.chords();
        if chords.iter().all(|&c| self.generator(c).energy.is_none()) {
            return Vec::new();
        }
        let mut issues = Vec::new();
        for &c in &chords {
            if self.generator(c).energy.is_none() {
                issues.push(Issue::MissingEnergy {
                    generator: self.name(c).to_string(),
                });
            }
        }
        for &c in &chords {
            let Some(top) = self.generator(c).energy else {
                continue;
            };
            for (w, _) in self.diff(c).terms() {
                let mut total = Energy::from_integer(0);
                let mut known = true;
                for x in w.letters() {
                    let g = self.generator(*x);
                    if g.is_chord() {
                        match g.energy {
                            Some(e) => total += e,
                            None => known = false,
                        }
                    }
                }
                if known && total >= top {
                    issues.push(Issue::Energy {
                        generator: self.name(c).to_string(),
                        word: self.fmt_word(w),
                    });
                }
            }
        }
        issues
    }

    /// Canonical text form; parses back to an equal dga.
    pub fn to_text(&self) -> String {
        use std::fmt::Write;
        let mut out = String::new();
        writeln!(out, "field {}", self.field.label()).unwrap();
        writeln!(out, "components {}", self.components).unwrap();
        for g in &self.gens {
            let kind = match g.kind {
                GenKind::Chord => "chord",
                GenKind::Loop => "loop",
                GenKind::LoopInverse => continue,
            };
            writeln!(
                out,
                "gen {} {} {} {} {}",
                g.name,
                g.degree,
                g.row + 1,
                g.col + 1,
                kind
            )
            .unwrap();
        }
        for g in &self.gens {
            if let Some(e) = g.energy {
                writeln!(out, "energy {} {}", g.name, e).unwrap();
            }
        }
        for id in self.ids() {
            if self.generator(id).is_chord() {
                writeln!(out, "diff {} = {}", self.name(id), self.fmt_poly(self.diff(id))).unwrap();
            }
        }
        out
    }
}

impl fmt::Display for Dga {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.to_text())
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Issue {
    NotComposable { generator: String, word: String },
    Degree { generator: String, word: String },
    Grading { generator: String, word: String },
    LoopDifferential { generator: String },
    SquareNonzero { generator: String, word: String },
    MissingEnergy { generator: String },
    Energy { generator: String, word: String },
}

impl fmt::Display for Issue {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Issue::NotComposable { generator, word } => {
                write!(f, "d{generator}: word {word} is not composable")
            }
            Issue::Degree { generator, word } => {
                write!(f, "d{generator}: word {word} has the wrong degree")
            }
            Issue::Grading { generator, word } => {
                write!(f, "d{generator}: word {word} has the wrong component pair")
            }
            Issue::LoopDifferential { generator } => {
                write!(f, "d{generator}: loop generators must be closed")
            }
            Issue::SquareNonzero { generator, word } => {
                write!(f, "dd{generator} != 0: surviving word {word}")
            }
            Issue::MissingEnergy { generator } => {
                write!(f, "{generator}: energies are given for some chords but not this one")
            }
            Issue::Energy { generator, word } => {
                write!(f, "d{generator}: word {word} does not have smaller energy")
            }
        }
    }
}

#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct ValidationReport {
    pub issues: Vec<Issue>,
}

impl ValidationReport {
    pub fn is_valid(&self) -> bool {
        self.issues.is_empty()
    }
}

impl fmt::Display for ValidationReport {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.issues.is_empty() {
            return writeln!(f, "valid");
        }
        writeln!(f, "invalid: {} issue(s)", self.issues.len())?;
        for i in &self.issues {
            writeln!(f, "  {i}")?;
        }
        Ok(())
    }
}

/// Programmatic construction with the same structural checks as the parser.
pub struct DgaBuilder {
    field: Field,
    components: usize,
    gens: Vec<Generator>,
    diff: Vec<Option<Poly>>,
    names: HashMap<String, GenId>,
}

impl DgaBuilder {
    pub fn new(field: Field, components: usize) -> DgaBuilder {
        DgaBuilder {
            field,
            components,
            gens: Vec::new(),
            diff: Vec::new(),
            names: HashMap::new(),
        }
    }

    fn push(&mut self, g: Generator) -> Result<GenId, String> {
        if self.names.contains_key(&g.name) {
            return Err(format!("duplicate generator name `{}`", g.name));
        }
        let id = GenId(self.gens.len() as u32);
        self.names.insert(g.name.clone(), id);
        self.gens.push(g);
        self.diff.push(None);
        Ok(id)
    }

    fn check_component(&self, c: usize) -> Result<(), String> {
        if c == 0 || c > self.components {
            Err(format!("component {c} outside 1..={}", self.components))
        } else {
            Ok(())
        }
    }

    /// Adds a chord; `row` and `col` are 1-based.
    pub fn chord(&mut self, name: &str, degree: i32, row: usize, col: usize) -> Result<GenId, String> {
        self.check_component(row)?;
        self.check_component(col)?;
        check_name(name)?;
        self.push(Generator {
            name: name.to_string(),
            degree,
            row: row - 1,
            col: col - 1,
            kind: GenKind::Chord,
            energy: None,
            inverse: None,
        })
    }

    /// Adds a loop generator on a 1-based component together with its
    /// inverse `name^-1`. Returns the loop's id.
    pub fn loop_gen(&mut self, name: &str, component: usize) -> Result<GenId, String> {
        self.check_component(component)?;
        check_name(name)?;
        let c = component - 1;
        let id = GenId(self.gens.len() as u32);
        let inv = GenId(id.0 + 1);
        self.push(Generator {
            name: name.to_string(),
            degree: 0,
            row: c,
            col: c,
            kind: GenKind::Loop,
            energy: None,
            inverse: Some(inv),
        })?;
        self.push(Generator {
            name: format!("{name}^-1"),
            degree: 0,
            row: c,
            col: c,
            kind: GenKind::LoopInverse,
            energy: None,
            inverse: Some(id),
        })?;
        Ok(id)
    }

    pub fn energy(&mut self, id: GenId, e: Energy) -> Result<(), String> {
        if e <= Energy::from_integer(0) {
            return Err(format!("energy of `{}` must be positive", self.gens[id.index()].name));
        }
        self.gens[id.index()].energy = Some(e);
        Ok(())
    }

    pub fn id(&self, name: &str) -> Option<GenId> {
        self.names.get(name).copied()
    }

    fn view(&self) -> Dga {
        Dga {
            field: self.field,
            components: self.components,
            gens: self.gens.clone(),
            diff: vec![Poly::zero(); self.gens.len()],
            names: self.names.clone(),
            neg_order: Vec::new(),
        }
    }

    /// Sets `d(id)` from its text form.
    pub fn diff_text(&mut self, id: GenId, text: &str) -> Result<(), DgaError> {
        let p = parse::parse_poly_text(&self.view(), text, 1, 0)?;
        self.set_diff(id, p, 1)
    }

    pub fn diff(&mut self, id: GenId, p: Poly) -> Result<(), DgaError> {
        self.set_diff(id, p, 0)
    }

    fn set_diff(&mut self, id: GenId, p: Poly, line: usize) -> Result<(), DgaError> {
        let view = self.view();
        let g = &self.gens[id.index()];
        for (w, _) in p.terms() {
            let word = view.fmt_word(w);
            if !view.is_composable(w) {
                return Err(DgaError::NotComposable { line, word });
            }
            let found = view.word_degree(w);
            if found != g.degree - 1 {
                return Err(DgaError::DegreeMismatch {
                    line,
                    generator: g.name.clone(),
                    word,
                    expected: g.degree - 1,
                    found,
                });
            }
            let (found_row, found_col) = view.word_ends(w).unwrap_or((g.row, g.row));
            if (found_row, found_col) != (g.row, g.col) {
                return Err(DgaError::GradingMismatch {
                    line,
                    generator: g.name.clone(),
                    word,
                    row: g.row + 1,
                    col: g.col + 1,
                    found_row: found_row + 1,
                    found_col: found_col + 1,
                });
            }
        }
        if g.kind != GenKind::Chord && !p.is_zero() {
            return Err(DgaError::Invalid {
                line,
                message: format!("loop generator `{}` must have zero differential", g.name),
            });
        }
        if self.diff[id.index()].is_some() {
            return Err(DgaError::Invalid {
                line,
                message: format!("second differential for `{}`", g.name),
            });
        }
        self.diff[id.index()] = Some(p);
        Ok(())
    }

    pub fn build(self) -> Result<Dga, DgaError> {
        let mut diff = Vec::with_capacity(self.gens.len());
        for (g, d) in self.gens.iter().zip(self.diff) {
            match d {
                Some(p) => diff.push(p),
                None if g.kind == GenKind::Chord => {
                    return Err(DgaError::Invalid {
                        line: 0,
                        message: format!("chord `{}` has no differential", g.name),
                    })
                }
                None => diff.push(Poly::zero()),
            }
        }
        let mut neg_order: Vec<GenId> = (0..self.gens.len() as u32)
            .map(GenId)
            .filter(|id| {
                let g = &self.gens[id.index()];
                g.is_chord() && g.degree == -1
            })
            .collect();
        if neg_order.iter().all(|id| self.gens[id.index()].energy.is_some()) {
            neg_order.sort_by_key(|id| self.gens[id.index()].energy);
        }
        Ok(Dga {
            field: self.field,
            components: self.components,
            gens: self.gens,
            diff,
            names: self.names,
            neg_order,
        })
    }
}

fn check_name(name: &str) -> Result<(), String> {
    let mut chars = name.chars();
    let ok = chars
        .next()
        .is_some_and(|c| c.is_ascii_alphabetic() || c == '_')
        && chars.all(|c| c.is_ascii_alphanumeric() || c == '_' || c == '\'');
    if ok {
        Ok(())
    } else {
        Err(format!("invalid generator name `{name}`"))
    }
}

mod parse {
    use super::*;

    fn syntax(line: usize, column: usize, message: impl Into<String>) -> DgaError {
        DgaError::Syntax {
            line,
            column,
            message: message.into(),
        }
    }

    fn parse_energy(text: &str) -> Option<Energy> {
        if let Some((n, d)) = text.split_once('/') {
            let n: i64 = n.trim().parse().ok()?;
            let d: i64 = d.trim().parse().ok()?;
            return (d != 0).then(|| Energy::new(n, d));
        }
        let (int, frac) = text.split_once('.').unwrap_or((text, ""));
        if frac.len() > 12 || !frac.chars().all(|c| c.is_ascii_digit()) {
            return None;
        }
        let int: i64 = if int.is_empty() { 0 } else { int.parse().ok()? };
        let scale = 10i64.pow(frac.len() as u32);
        let frac: i64 = if frac.is_empty() { 0 } else { frac.parse().ok()? };
        Some(Energy::new(int * scale + frac, scale))
    }

    /// Column (1-based) of the `n`-th whitespace-separated field of a line.
    fn field_column(raw: &str, n: usize) -> usize {
        let mut count = 0;
        let mut in_field = false;
        for (i, c) in raw.char_indices() {
            if c.is_whitespace() {
                in_field = false;
            } else if !in_field {
                if count == n {
                    return i + 1;
                }
                count += 1;
                in_field = true;
            }
        }
        raw.len() + 1
    }

    pub(super) fn parse(text: &str, override_field: Option<Field>) -> Result<Dga, DgaError> {
        let mut field = None;
        let mut components = None;
        let mut gen_lines = Vec::new();
        let mut energy_lines = Vec::new();
        let mut diff_lines = Vec::new();

        for (i, raw) in text.lines().enumerate() {
            let line = i + 1;
            let content = raw.split('#').next().unwrap_or("");
            let fields: Vec<&str> = content.split_whitespace().collect();
            let Some(&key) = fields.first() else {
                continue;
            };
            match key {
                "field" => {
                    if fields.len() != 2 {
                        return Err(syntax(line, 1, "expected `field 2^m`"));
                    }
                    let f = Field::parse_label(fields[1])
                        .map_err(|source| DgaError::Field { line, source })?;
                    field = Some(f);
                }
                "components" => {
                    let n = fields
                        .get(1)
                        .and_then(|n| n.parse::<usize>().ok())
                        .filter(|&n| n >= 1 && fields.len() == 2)
                        .ok_or_else(|| {
                            syntax(line, field_column(raw, 1), "expected a positive component count")
                        })?;
                    components = Some(n);
                }
                "gen" => gen_lines.push((line, raw, fields)),
                "energy" => energy_lines.push((line, raw, fields)),
                "diff" => diff_lines.push((line, raw, content)),
                other => {
                    return Err(syntax(line, field_column(raw, 0), format!("unknown directive `{other}`")))
                }
            }
        }

        let field = override_field
            .or(field)
            .ok_or_else(|| syntax(1, 1, "missing `field` line"))?;
        let components = components.ok_or_else(|| syntax(1, 1, "missing `components` line"))?;
        let mut b = DgaBuilder::new(field, components);

        for (line, raw, f) in gen_lines {
            if f.len() != 6 {
                return Err(syntax(line, 1, "expected `gen name degree row col kind`"));
            }
            let num = |k: usize| -> Result<i64, DgaError> {
                f[k].parse::<i64>()
                    .map_err(|_| syntax(line, field_column(raw, k), format!("expected an integer, found `{}`", f[k])))
            };
            let degree = num(2)? as i32;
            let row = num(3)?;
            let col = num(4)?;
            if row < 1 || col < 1 {
                return Err(syntax(line, field_column(raw, 3), "components are numbered from 1"));
            }
            let (row, col) = (row as usize, col as usize);
            if b.id(f[1]).is_some() {
                return Err(DgaError::DuplicateName {
                    line,
                    name: f[1].to_string(),
                });
            }
            let res = match f[5] {
                "chord" => b.chord(f[1], degree, row, col),
                "loop" => {
                    if degree != 0 || row != col {
                        return Err(DgaError::Invalid {
                            line,
                            message: format!("loop `{}` must have degree 0 and row = col", f[1]),
                        });
                    }
                    b.loop_gen(f[1], row)
                }
                other => {
                    return Err(syntax(line, field_column(raw, 5), format!("unknown generator kind `{other}`")))
                }
            };
            res.map_err(|message| DgaError::Invalid { line, message })?;
        }

        for (line, raw, f) in energy_lines {
            if f.len() != 3 {
                return Err(syntax(line, 1, "expected `energy name value`"));
            }
            let id = b.id(f[1]).ok_or_else(|| DgaError::UnknownGenerator {
                line,
                column: field_column(raw, 1),
                name: f[1].to_string(),
            })?;
            let e = parse_energy(f[2])
                .ok_or_else(|| syntax(line, field_column(raw, 2), format!("malformed energy `{}`", f[2])))?;
            b.energy(id, e)
                .map_err(|message| DgaError::Invalid { line, message })?;
        }

        for (line, raw, content) in diff_lines {
            let rest = content.trim_start().strip_prefix("diff").unwrap_or("");
            let Some((lhs, rhs)) = rest.split_once('=') else {
                return Err(syntax(line, 1, "expected `diff name = polynomial`"));
            };
            let name = lhs.trim();
            let id = b.id(name).ok_or_else(|| DgaError::UnknownGenerator {
                line,
                column: raw.find(name).map_or(1, |c| c + 1),
                name: name.to_string(),
            })?;
            let offset = raw.find('=').map_or(0, |c| c + 1);
            let p = parse_poly_text(&b.view(), rhs, line, offset)?;
            b.set_diff(id, p, line)?;
        }
        b.build()
    }

    /// Parses `term (+ term)*` where a term is `[(elem)*]word`, `1`, or `0`.
    /// `offset` is the byte offset of `text` within its line.
    pub(super) fn parse_poly_text(
        dga: &Dga,
        text: &str,
        line: usize,
        offset: usize,
    ) -> Result<Poly, DgaError> {
        let bytes = text.as_bytes();
        let mut pos = 0;
        let mut poly = Poly::zero();
        let col = |p: usize| offset + p + 1;
        let skip_ws = |pos: &mut usize| {
            while *pos < bytes.len() && bytes[*pos].is_ascii_whitespace() {
                *pos += 1;
            }
        };
        loop {
            skip_ws(&mut pos);
            if pos >= bytes.len() {
                return Err(syntax(line, col(pos), "expected a term"));
            }
            let mut coeff = Elem::ONE;
            if bytes[pos] == b'(' {
                let close = text[pos..]
                    .find(')')
                    .map(|c| pos + c)
                    .ok_or_else(|| syntax(line, col(pos), "unclosed `(`"))?;
                coeff = dga
                    .field
                    .parse_elem(&text[pos + 1..close])
                    .map_err(|source| DgaError::Field { line, source })?;
                pos = close + 1;
                skip_ws(&mut pos);
                if pos >= bytes.len() || bytes[pos] != b'*' {
                    return Err(syntax(line, col(pos), "expected `*` after coefficient"));
                }
                pos += 1;
                skip_ws(&mut pos);
            }
            let start = pos;
            while pos < bytes.len() && bytes[pos] != b'+' {
                pos += 1;
            }
            let term = text[start..pos].trim_end();
            if term.is_empty() {
                return Err(syntax(line, col(start), "expected a word"));
            }
            match term {
                "0" => {}
                "1" => poly.add_term(Word::unit(), coeff),
                _ => {
                    let mut letters = Vec::new();
                    let mut lpos = start;
                    for name in term.split('.') {
                        let trimmed = name.trim();
                        let id = dga.id(trimmed).ok_or_else(|| {
                            if trimmed.is_empty() {
                                syntax(line, col(lpos), "empty generator name")
                            } else {
                                DgaError::UnknownGenerator {
                                    line,
                                    column: col(lpos),
                                    name: trimmed.to_string(),
                                }
                            }
                        })?;
                        letters.push(id);
                        lpos += name.len() + 1;
                    }
                    let raw_word = Word(letters.clone());
                    if !dga.is_composable(&raw_word) {
                        return Err(DgaError::NotComposable {
                            line,
                            word: term.to_string(),
                        });
                    }
                    poly.add_term(dga.reduce(letters), coeff);
                }
            }
            if pos >= bytes.len() {
                return Ok(poly);
            }
            pos += 1; // '+'
        }
    }
}
