//! Brute-force reference computations.
//!
//! Everything here is deliberately naive and shares no algorithm with the
//! fast path: words are vectors of generator names, field products are
//! shift-and-add, inverses are found by search, augmentations and homotopies
//! by exhausting every assignment, ranks by enumerating column spans. Only
//! the parsed dga (names, degrees, ends, differentials) is taken from
//! `augcat`.

pub mod golden;

use std::collections::{BTreeMap, BTreeSet, HashMap};

use augcat::augment::Augmentation;
use augcat::dga::Dga;
use augcat::gfield::Elem;
use augcat::homotopy::{DilatedHomotopy, DilationTuple};

/// Refuse searches larger than this many candidates.
pub const SEARCH_LIMIT: u64 = 1 << 24;

type NWord = Vec<String>;

#[derive(Clone, Copy, Debug)]
pub struct Gf {
    m: u32,
    modulus: u32,
}

impl Gf {
    pub fn of(dga: &Dga) -> Gf {
        Gf {
            m: dga.field().m(),
            modulus: dga.field().modulus(),
        }
    }

    pub fn q(self) -> u32 {
        1 << self.m
    }

    pub fn mul(self, a: u16, b: u16) -> u16 {
        let mut acc: u32 = 0;
        let mut a = a as u32;
        let mut b = b as u32;
        while b != 0 {
            if b & 1 == 1 {
                acc ^= a;
            }
            b >>= 1;
            a <<= 1;
            if a & (1 << self.m) != 0 {
                a ^= self.modulus;
            }
        }
        acc as u16
    }

    pub fn inv(self, a: u16) -> u16 {
        (1..self.q() as u16).find(|&x| self.mul(a, x) == 1).expect("zero has no inverse")
    }
}

struct Gen {
    name: String,
    degree: i32,
    row: usize,
    col: usize,
    is_loop: bool,
    inverse_of: Option<String>,
    diff: Vec<(NWord, u16)>,
}

/// A dga seen only through names.
pub struct NaiveDga {
    gf: Gf,
    components: usize,
    gens: Vec<Gen>,
    index: HashMap<String, usize>,
}

impl NaiveDga {
    pub fn new(dga: &Dga) -> NaiveDga {
        let gens: Vec<Gen> = dga
            .ids()
            .map(|id| {
                let g = dga.generator(id);
                Gen {
                    name: g.name.clone(),
                    degree: g.degree,
                    row: g.row,
                    col: g.col,
                    is_loop: g.kind == augcat::dga::GenKind::Loop,
                    inverse_of: match g.kind {
                        augcat::dga::GenKind::LoopInverse => g.inverse.map(|i| dga.name(i).to_string()),
                        _ => None,
                    },
                    diff: dga
                        .diff(id)
                        .terms()
                        .map(|(w, c)| (w.letters().iter().map(|&l| dga.name(l).to_string()).collect(), c.bits()))
                        .collect(),
                }
            })
            .collect();
        let index = gens.iter().enumerate().map(|(i, g)| (g.name.clone(), i)).collect();
        NaiveDga {
            gf: Gf::of(dga),
            components: dga.components(),
            gens,
            index,
        }
    }

    fn gen(&self, name: &str) -> &Gen {
        &self.gens[self.index[name]]
    }

    fn cancels(&self, a: &str, b: &str) -> bool {
        self.gen(a).inverse_of.as_deref() == Some(b) || self.gen(b).inverse_of.as_deref() == Some(a)
    }

    /// Repeatedly deletes adjacent `t t^-1` pairs until none remain.
    fn simplify(&self, mut w: NWord) -> NWord {
        loop {
            let pos = (0..w.len().saturating_sub(1)).find(|&i| self.cancels(&w[i], &w[i + 1]));
            match pos {
                Some(i) => {
                    w.drain(i..i + 2);
                }
                None => return w,
            }
        }
    }

    fn boundary_word(&self, w: &[String], out: &mut HashMap<NWord, u16>) {
        for t in 0..w.len() {
            for (dw, c) in &self.gen(&w[t]).diff {
                let mut nw: NWord = w[..t].to_vec();
                nw.extend(dw.iter().cloned());
                nw.extend(w[t + 1..].iter().cloned());
                let nw = self.simplify(nw);
                *out.entry(nw).or_insert(0) ^= c;
            }
        }
    }

    /// `dd(x)` as a map from surviving words to nonzero coefficients.
    pub fn square(&self, name: &str) -> BTreeMap<NWord, u16> {
        let mut out = HashMap::new();
        for (w, c) in &self.gen(name).diff {
            let mut part = HashMap::new();
            self.boundary_word(w, &mut part);
            for (k, v) in part {
                *out.entry(k).or_insert(0) ^= self.gf.mul(*c, v);
            }
        }
        out.into_iter().filter(|(_, v)| *v != 0).collect()
    }

    fn eval(&self, values: &HashMap<&str, u16>, w: &[String]) -> u16 {
        w.iter().fold(1, |acc, l| self.gf.mul(acc, values.get(l.as_str()).copied().unwrap_or(0)))
    }

    fn eval_diff(&self, values: &HashMap<&str, u16>, name: &str) -> u16 {
        self.gen(name)
            .diff
            .iter()
            .fold(0, |acc, (w, c)| acc ^ self.gf.mul(*c, self.eval(values, w)))
    }

    fn value_map<'a>(&'a self, e: &Augmentation, dga: &Dga) -> HashMap<&'a str, u16> {
        self.gens
            .iter()
            .map(|g| (g.name.as_str(), e.value(dga.id(&g.name).unwrap()).bits()))
            .collect()
    }
}

/// Every augmentation, found by trying all values on loops (units) and
/// degree 0 chords. `None` when the search space exceeds [`SEARCH_LIMIT`].
pub fn brute_augmentations(dga: &Dga) -> Option<Vec<Augmentation>> {
    let nd = NaiveDga::new(dga);
    let q = nd.gf.q() as u64;
    let loops: Vec<&Gen> = nd.gens.iter().filter(|g| g.is_loop).collect();
    let chords: Vec<&Gen> = nd
        .gens
        .iter()
        .filter(|g| !g.is_loop && g.inverse_of.is_none() && g.degree == 0)
        .collect();
    let total = (q - 1).checked_pow(loops.len() as u32)?.checked_mul(q.checked_pow(chords.len() as u32)?)?;
    if total > SEARCH_LIMIT {
        return None;
    }
    let mut out = Vec::new();
    for code in 0..total {
        let mut rest = code;
        let mut values: HashMap<&str, u16> = HashMap::new();
        for g in &loops {
            values.insert(&g.name, (rest % (q - 1) + 1) as u16);
            rest /= q - 1;
        }
        for g in &chords {
            values.insert(&g.name, (rest % q) as u16);
            rest /= q;
        }
        for g in &nd.gens {
            if let Some(base) = &g.inverse_of {
                let v = nd.gf.inv(values[base.as_str()]);
                values.insert(&g.name, v);
            }
        }
        if nd.gens.iter().all(|g| nd.eval_diff(&values, &g.name) == 0) {
            let vals: Vec<Elem> = nd
                .gens
                .iter()
                .map(|g| dga.field().elem(values.get(g.name.as_str()).copied().unwrap_or(0) as u32).unwrap())
                .collect();
            out.push(Augmentation::from_values(dga, vals).expect("oracle produced a non-augmentation"));
        }
    }
    out.sort();
    Some(out)
}

/// `K(w) = sum_t e1(w_<t) K(w_t) e2(w_>t)`, `K` zero off degree -1 chords.
fn k_of_word(nd: &NaiveDga, v1: &HashMap<&str, u16>, v2: &HashMap<&str, u16>, k: &HashMap<&str, u16>, w: &[String]) -> u16 {
    let mut acc = 0;
    for t in 0..w.len() {
        let kv = k.get(w[t].as_str()).copied().unwrap_or(0);
        if kv == 0 {
            continue;
        }
        let left = nd.eval(v1, &w[..t]);
        let right = nd.eval(v2, &w[t + 1..]);
        acc ^= nd.gf.mul(nd.gf.mul(left, kv), right);
    }
    acc
}

/// Checks the defining conditions of a dilated homotopy from scratch.
pub fn naive_check(dga: &Dga, e1: &Augmentation, e2: &Augmentation, h: &DilatedHomotopy) -> bool {
    let nd = NaiveDga::new(dga);
    let v1 = nd.value_map(e1, dga);
    let v2 = nd.value_map(e2, dga);
    let k: HashMap<&str, u16> = nd
        .gens
        .iter()
        .filter(|g| g.degree == -1)
        .map(|g| (g.name.as_str(), h.k(dga.id(&g.name).unwrap()).bits()))
        .collect();
    let d: Vec<u16> = h.d.entries().iter().map(|e| e.bits()).collect();
    condition_holds(&nd, &v1, &v2, &d, &k)
}

fn condition_holds(nd: &NaiveDga, v1: &HashMap<&str, u16>, v2: &HashMap<&str, u16>, d: &[u16], k: &HashMap<&str, u16>) -> bool {
    for g in &nd.gens {
        if g.is_loop && v1[g.name.as_str()] != v2[g.name.as_str()] {
            return false;
        }
    }
    nd.gens
        .iter()
        .filter(|g| !g.is_loop && g.inverse_of.is_none() && g.degree == 0)
        .all(|g| {
            let kd = g
                .diff
                .iter()
                .fold(0, |acc, (w, c)| acc ^ nd.gf.mul(*c, k_of_word(nd, v1, v2, k, w)));
            let lhs = nd.gf.mul(d[g.col], v1[g.name.as_str()]) ^ nd.gf.mul(d[g.row], v2[g.name.as_str()]);
            lhs == kd
        })
}

/// Every dilated homotopy from `e1` to `e2`, over all `d` (not normalized)
/// and all `K`. `None` when the search exceeds [`SEARCH_LIMIT`].
pub fn all_witnesses(dga: &Dga, e1: &Augmentation, e2: &Augmentation) -> Option<Vec<DilatedHomotopy>> {
    let nd = NaiveDga::new(dga);
    let q = nd.gf.q() as u64;
    let n = nd.components;
    let negs: Vec<&Gen> = nd.gens.iter().filter(|g| g.degree == -1).collect();
    let total = (q - 1).checked_pow(n as u32)?.checked_mul(q.checked_pow(negs.len() as u32)?)?;
    if total > SEARCH_LIMIT {
        return None;
    }
    let v1 = nd.value_map(e1, dga);
    let v2 = nd.value_map(e2, dga);
    let mut out = Vec::new();
    for code in 0..total {
        let mut rest = code;
        let mut d = Vec::with_capacity(n);
        for _ in 0..n {
            d.push((rest % (q - 1) + 1) as u16);
            rest /= q - 1;
        }
        let mut k: HashMap<&str, u16> = HashMap::new();
        for g in &negs {
            k.insert(&g.name, (rest % q) as u16);
            rest /= q;
        }
        if condition_holds(&nd, &v1, &v2, &d, &k) {
            let f = dga.field();
            let tuple = DilationTuple::new(dga, d.iter().map(|&x| f.elem(x as u32).unwrap()).collect()).unwrap();
            let kvals: Vec<Elem> = dga
                .neg_chords()
                .iter()
                .map(|&b| f.elem(k[dga.name(b)] as u32).unwrap())
                .collect();
            out.push(DilatedHomotopy::new(dga, tuple, &kvals));
        }
    }
    Some(out)
}

/// Whether any dilated homotopy exists.
pub fn has_witness(dga: &Dga, e1: &Augmentation, e2: &Augmentation) -> Option<bool> {
    all_witnesses(dga, e1, e2).map(|w| !w.is_empty())
}

/// Partition of `augs` under the oracle relation, each class sorted, classes
/// ordered by first member.
pub fn oracle_classes(dga: &Dga, augs: &[Augmentation]) -> Option<Vec<Vec<usize>>> {
    let n = augs.len();
    let mut rel = vec![vec![false; n]; n];
    for i in 0..n {
        for j in 0..n {
            rel[i][j] = has_witness(dga, &augs[i], &augs[j])?;
        }
    }
    let mut label: Vec<Option<usize>> = vec![None; n];
    let mut classes: Vec<Vec<usize>> = Vec::new();
    for i in 0..n {
        if label[i].is_some() {
            continue;
        }
        // closure by graph search over the symmetric relation
        let c = classes.len();
        let mut stack = vec![i];
        let mut members = BTreeSet::new();
        while let Some(x) = stack.pop() {
            if !members.insert(x) {
                continue;
            }
            label[x] = Some(c);
            stack.extend((0..n).filter(|&y| (rel[x][y] || rel[y][x]) && !members.contains(&y)));
        }
        classes.push(members.into_iter().collect());
    }
    Some(classes)
}

fn span_size(gf: Gf, columns: &[Vec<u16>]) -> Option<usize> {
    let mut span: BTreeSet<Vec<u16>> = BTreeSet::new();
    let rows = columns.first().map_or(0, |c| c.len());
    span.insert(vec![0; rows]);
    for col in columns {
        if span.contains(col) {
            continue;
        }
        let mut next = BTreeSet::new();
        for s in &span {
            for a in 0..gf.q() as u16 {
                next.insert(s.iter().zip(col).map(|(&x, &y)| x ^ gf.mul(a, y)).collect::<Vec<u16>>());
            }
        }
        if next.len() as u64 > SEARCH_LIMIT {
            return None;
        }
        span = next;
    }
    Some(span.len())
}

/// Rank of a matrix given by columns, as `log_q` of the size of its span.
pub fn naive_rank(gf: Gf, columns: &[Vec<u16>]) -> Option<usize> {
    let size = span_size(gf, columns)?;
    let mut r = 0;
    let mut s = 1usize;
    while s < size {
        s *= gf.q() as usize;
        r += 1;
    }
    Some(r)
}

/// Bilinearized coefficient of chord `b` in `d(e)`.
fn bilinear_coeff(nd: &NaiveDga, v1: &HashMap<&str, u16>, v2: &HashMap<&str, u16>, e: &Gen, b: &str) -> u16 {
    let k: HashMap<&str, u16> = [(b, 1)].into_iter().collect();
    e.diff
        .iter()
        .fold(0, |acc, (w, c)| acc ^ nd.gf.mul(*c, k_of_word(nd, v1, v2, &k, w)))
}

/// Dimensions of bilinearized cohomology by Hom-degree (dga degree + 1).
pub fn naive_bch_dims(dga: &Dga, e1: &Augmentation, e2: &Augmentation) -> Option<BTreeMap<i32, usize>> {
    let nd = NaiveDga::new(dga);
    let v1 = nd.value_map(e1, dga);
    let v2 = nd.value_map(e2, dga);
    let mut by_degree: BTreeMap<i32, Vec<&Gen>> = BTreeMap::new();
    for g in &nd.gens {
        if !g.is_loop && g.inverse_of.is_none() {
            by_degree.entry(g.degree + 1).or_default().push(g);
        }
    }
    // rank of the map from Hom-degree q to q + 1
    let mut ranks: BTreeMap<i32, usize> = BTreeMap::new();
    for (&q, src) in &by_degree {
        let Some(dst) = by_degree.get(&(q + 1)) else { continue };
        let columns: Vec<Vec<u16>> = src
            .iter()
            .map(|b| dst.iter().map(|e| bilinear_coeff(&nd, &v1, &v2, e, &b.name)).collect())
            .collect();
        ranks.insert(q, naive_rank(nd.gf, &columns)?);
    }
    Some(
        by_degree
            .iter()
            .map(|(&q, basis)| {
                let out = ranks.get(&q).copied().unwrap_or(0);
                let inc = ranks.get(&(q - 1)).copied().unwrap_or(0);
                (q, basis.len() - out - inc)
            })
            .collect(),
    )
}
