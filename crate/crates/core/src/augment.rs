//! Augmentations `e: A -> k`: unit-preserving, degree 0 algebra maps with
//! `e o d = 0`.

use std::fmt;

use crate::dga::{Dga, GenId, GenKind, Poly, Word};
use crate::error::AugError;
use crate::gfield::Elem;
use crate::par;

/// Values of an augmentation on every generator, indexed by [`GenId`].
///
/// Loop inverses carry the inverse of their loop's value and generators of
/// nonzero degree carry zero.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Augmentation {
    values: Vec<Elem>,
}

/// Why a value assignment is not an augmentation.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum AugViolation {
    Missing(GenId),
    NonzeroDegree { generator: GenId, value: Elem },
    LoopNotUnit(GenId),
    InverseMismatch(GenId),
    /// `e(dx) != 0`, with the offending value.
    Differential { generator: GenId, value: Elem },
}

impl AugViolation {
    pub fn generator(&self) -> GenId {
        match *self {
            AugViolation::Missing(g)
            | AugViolation::LoopNotUnit(g)
            | AugViolation::InverseMismatch(g) => g,
            AugViolation::NonzeroDegree { generator, .. }
            | AugViolation::Differential { generator, .. } => generator,
        }
    }

    pub fn describe(&self, dga: &Dga) -> String {
        let name = dga.name(self.generator());
        match self {
            AugViolation::Missing(_) => format!("no value for {name}"),
            AugViolation::NonzeroDegree { value, .. } => {
                format!("{name} has nonzero degree but value {value}")
            }
            AugViolation::LoopNotUnit(_) => format!("loop {name} must take a nonzero value"),
            AugViolation::InverseMismatch(_) => format!("{name} is not the inverse of its loop"),
            AugViolation::Differential { value, .. } => format!("e(d{name}) = {value}"),
        }
    }

    fn into_error(self, dga: &Dga) -> AugError {
        AugError::NotAugmentation {
            generator: dga.name(self.generator()).to_string(),
            reason: self.describe(dga),
        }
    }
}

/// Checks every augmentation condition on a full value vector.
pub fn is_augmentation(dga: &Dga, values: &[Elem]) -> Result<(), AugViolation> {
    let f = dga.field();
    if values.len() < dga.generators().len() {
        return Err(AugViolation::Missing(GenId(values.len() as u32)));
    }
    for id in dga.ids() {
        let g = dga.generator(id);
        let v = values[id.index()];
        if g.degree != 0 && !v.is_zero() {
            return Err(AugViolation::NonzeroDegree { generator: id, value: v });
        }
        match g.kind {
            GenKind::Loop if v.is_zero() => return Err(AugViolation::LoopNotUnit(id)),
            GenKind::LoopInverse => {
                let partner = g.inverse.expect("loop inverse has a partner");
                if f.mul(v, values[partner.index()]) != Elem::ONE {
                    return Err(AugViolation::InverseMismatch(id));
                }
            }
            _ => {}
        }
    }
    for id in dga.ids() {
        let v = dga.eval_poly(values, dga.diff(id));
        if !v.is_zero() {
            return Err(AugViolation::Differential { generator: id, value: v });
        }
    }
    Ok(())
}

impl Augmentation {
    /// Wraps a full value vector after checking it.
    pub fn from_values(dga: &Dga, values: Vec<Elem>) -> Result<Augmentation, AugError> {
        is_augmentation(dga, &values).map_err(|v| v.into_error(dga))?;
        Ok(Augmentation { values })
    }

    /// Wraps a value vector known to satisfy every condition.
    pub(crate) fn from_values_unchecked(values: Vec<Elem>) -> Augmentation {
        Augmentation { values }
    }

    /// Builds the full value vector from values on degree 0 chords and loops;
    /// unlisted degree 0 chords default to zero, loops to one.
    pub fn from_assignment(dga: &Dga, assignment: &[(GenId, Elem)]) -> Result<Augmentation, AugError> {
        let mut values = default_values(dga);
        for &(id, v) in assignment {
            let g = dga.generator(id);
            if g.degree != 0 || g.kind == GenKind::LoopInverse {
                return Err(AugError::NonzeroDegree(g.name.clone()));
            }
            set_value(dga, &mut values, id, v);
        }
        Augmentation::from_values(dga, values)
    }

    pub fn values(&self) -> &[Elem] {
        &self.values
    }

    #[inline]
    pub fn value(&self, id: GenId) -> Elem {
        self.values[id.index()]
    }

    pub fn eval_word(&self, dga: &Dga, w: &Word) -> Elem {
        dga.eval_word(&self.values, w)
    }

    pub fn eval(&self, dga: &Dga, p: &Poly) -> Elem {
        dga.eval_poly(&self.values, p)
    }

    /// `name=elem` pairs for every loop and degree 0 chord, in generator order.
    pub fn to_text(&self, dga: &Dga) -> String {
        assignable(dga)
            .map(|id| format!("{}={}", dga.name(id), self.value(id)))
            .collect::<Vec<_>>()
            .join(" ")
    }

    /// Parses whitespace separated `name=elem` pairs. Every loop and degree 0
    /// chord must be assigned exactly once; the result is checked.
    pub fn parse(dga: &Dga, text: &str) -> Result<Augmentation, AugError> {
        let f = dga.field();
        let mut values = default_values(dga);
        let mut seen = vec![false; values.len()];
        let content: String = text
            .lines()
            .map(|l| l.split('#').next().unwrap_or(""))
            .collect::<Vec<_>>()
            .join(" ");
        for tok in content.split(|c: char| c.is_whitespace() || c == ',') {
            if tok.is_empty() {
                continue;
            }
            let (name, val) = tok
                .split_once('=')
                .ok_or_else(|| AugError::Syntax(tok.to_string()))?;
            let id = dga
                .id(name)
                .ok_or_else(|| AugError::UnknownGenerator(name.to_string()))?;
            let g = dga.generator(id);
            if g.degree != 0 || g.kind == GenKind::LoopInverse {
                return Err(AugError::NonzeroDegree(name.to_string()));
            }
            if std::mem::replace(&mut seen[id.index()], true) {
                return Err(AugError::Duplicate(name.to_string()));
            }
            let v = f.parse_elem(val)?;
            set_value(dga, &mut values, id, v);
        }
        if let Some(id) = assignable(dga).find(|id| !seen[id.index()]) {
            return Err(AugError::MissingValue(dga.name(id).to_string()));
        }
        Augmentation::from_values(dga, values)
    }

    pub fn display<'a>(&'a self, dga: &'a Dga) -> AugDisplay<'a> {
        AugDisplay { aug: self, dga }
    }
}

pub struct AugDisplay<'a> {
    aug: &'a Augmentation,
    dga: &'a Dga,
}

impl fmt::Display for AugDisplay<'_> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.aug.to_text(self.dga))
    }
}

/// Generators that carry free augmentation values: loops and degree 0 chords.
fn assignable(dga: &Dga) -> impl Iterator<Item = GenId> + '_ {
    dga.ids().filter(|&id| {
        let g = dga.generator(id);
        g.kind == GenKind::Loop || (g.kind == GenKind::Chord && g.degree == 0)
    })
}

fn default_values(dga: &Dga) -> Vec<Elem> {
    dga.generators()
        .iter()
        .map(|g| match g.kind {
            GenKind::Chord => Elem::ZERO,
            _ => Elem::ONE,
        })
        .collect()
}

fn set_value(dga: &Dga, values: &mut [Elem], id: GenId, v: Elem) {
    values[id.index()] = v;
    if let Some(inv) = dga.generator(id).inverse {
        values[inv.index()] = if v.is_zero() {
            Elem::ZERO
        } else {
            dga.field().inv_unit(v)
        };
    }
}

/// Backtracking search plan: variables in generator order, each constraint
/// `e(dx) = 0` attached to the variable after which all its letters are
/// assigned.
struct Plan<'a> {
    dga: &'a Dga,
    vars: Vec<GenId>,
    /// `checks[i]`: constraints decided once variable `i` is assigned.
    checks: Vec<Vec<Poly>>,
    /// Constraints with no free letters.
    constant: Vec<Poly>,
}

impl<'a> Plan<'a> {
    fn new(dga: &'a Dga) -> Plan<'a> {
        let vars: Vec<GenId> = assignable(dga).collect();
        let mut pos = vec![None; dga.generators().len()];
        for (i, &v) in vars.iter().enumerate() {
            pos[v.index()] = Some(i);
            if let Some(inv) = dga.generator(v).inverse {
                pos[inv.index()] = Some(i);
            }
        }
        let mut checks = vec![Vec::new(); vars.len()];
        let mut constant = Vec::new();
        for id in dga.ids() {
            // only words made of degree 0 letters survive a graded map
            let mut relevant = Poly::zero();
            for (w, c) in dga.diff(id).terms() {
                if w.letters().iter().all(|x| dga.generator(*x).degree == 0) {
                    relevant.add_term(w.clone(), c);
                }
            }
            if relevant.is_zero() {
                continue;
            }
            let ready = relevant
                .terms()
                .flat_map(|(w, _)| w.letters().iter().map(|x| pos[x.index()]))
                .max()
                .flatten();
            match ready {
                Some(i) => checks[i].push(relevant),
                None => constant.push(relevant),
            }
        }
        Plan {
            dga,
            vars,
            checks,
            constant,
        }
    }

    fn domain(&self, i: usize) -> Vec<Elem> {
        let f = self.dga.field();
        if self.dga.generator(self.vars[i]).kind == GenKind::Loop {
            f.units().collect()
        } else {
            f.elements().collect()
        }
    }

    fn passes(&self, values: &[Elem], i: usize) -> bool {
        self.checks[i]
            .iter()
            .all(|p| self.dga.eval_poly(values, p).is_zero())
    }

    fn extend(&self, i: usize, values: &mut Vec<Elem>, out: &mut Vec<Augmentation>) {
        if i == self.vars.len() {
            out.push(Augmentation::from_values_unchecked(values.clone()));
            return;
        }
        for v in self.domain(i) {
            set_value(self.dga, values, self.vars[i], v);
            if self.passes(values, i) {
                self.extend(i + 1, values, out);
            }
        }
    }

    fn run(&self) -> Vec<Augmentation> {
        let base = default_values(self.dga);
        if self
            .constant
            .iter()
            .any(|p| !self.dga.eval_poly(&base, p).is_zero())
        {
            return Vec::new();
        }
        if self.vars.is_empty() {
            return vec![Augmentation::from_values_unchecked(base)];
        }
        // the outermost variable is split across workers; chunks come back in
        // domain order
        let chunks = par::map_slice(&self.domain(0), |&v| {
            let mut values = base.clone();
            let mut out = Vec::new();
            set_value(self.dga, &mut values, self.vars[0], v);
            if self.passes(&values, 0) {
                self.extend(1, &mut values, &mut out);
            }
            out
        });
        chunks.into_iter().flatten().collect()
    }
}

/// Every augmentation of `dga`, ordered lexicographically by the values of
/// loops and degree 0 chords in generator order (field elements in bit
/// order).
pub fn enumerate_augmentations(dga: &Dga) -> Vec<Augmentation> {
    Plan::new(dga).run()
}
