//! Partition of the augmentation set into isomorphism classes.
//!
//! Each augmentation is tested against one representative per existing class
//! and merged (union-find) with every class it is isomorphic to. Classes are
//! numbered by their smallest member. The audits recheck reversed pairs
//! (symmetry), pairs implied by the partition (transitivity) and the
//! bilinearized dimensions of `(e, e)` across each class (invariance).

use std::collections::BTreeMap;
use std::fmt;

use crate::augment::{enumerate_augmentations, Augmentation};
use crate::dga::Dga;
use crate::error::ClassifyError;
use crate::homcx::bilinearized_cohomology_dims;
use crate::homotopy::{find_with_mode, DilatedHomotopy, SearchMode};
use crate::par;

pub const DEFAULT_LIMIT: usize = 20_000;

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct ClassifyOptions {
    pub mode: SearchMode,
    /// Decide every ordered pair instead of the representative frontier.
    pub full_audit: bool,
    pub limit: usize,
}

impl Default for ClassifyOptions {
    fn default() -> Self {
        ClassifyOptions {
            mode: SearchMode::Full,
            full_audit: false,
            limit: DEFAULT_LIMIT,
        }
    }
}

impl ClassifyOptions {
    pub fn with_mode(mode: SearchMode) -> Self {
        ClassifyOptions {
            mode,
            ..Default::default()
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct IsoClass {
    /// Indices into [`IsoClassification::augmentations`], ascending.
    pub members: Vec<usize>,
    /// Every member is related to the representative by a witness with `K = 0`.
    pub dilation_only: bool,
    /// Bilinearized cohomology of `(rep, rep)` by Hom-degree.
    pub bch: BTreeMap<i32, usize>,
}

impl IsoClass {
    pub fn representative(&self) -> usize {
        self.members[0]
    }

    pub fn len(&self) -> usize {
        self.members.len()
    }

    pub fn is_empty(&self) -> bool {
        self.members.is_empty()
    }
}

#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct AuditReport {
    pub symmetry: Vec<String>,
    pub transitivity: Vec<String>,
    pub invariance: Vec<String>,
    /// Number of ordered pairs rechecked.
    pub pairs_checked: usize,
}

impl AuditReport {
    pub fn is_clean(&self) -> bool {
        self.symmetry.is_empty() && self.transitivity.is_empty() && self.invariance.is_empty()
    }

    pub fn violations(&self) -> usize {
        self.symmetry.len() + self.transitivity.len() + self.invariance.len()
    }
}

impl fmt::Display for AuditReport {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(f, "pairs rechecked: {}", self.pairs_checked)?;
        for (name, list) in [
            ("symmetry", &self.symmetry),
            ("transitivity", &self.transitivity),
            ("invariance", &self.invariance),
        ] {
            if list.is_empty() {
                writeln!(f, "{name}: ok")?;
            } else {
                writeln!(f, "{name}: {} violation(s)", list.len())?;
                for v in list {
                    writeln!(f, "  {v}")?;
                }
            }
        }
        Ok(())
    }
}

#[derive(Clone, Debug)]
pub struct IsoClassification {
    pub augmentations: Vec<Augmentation>,
    /// Class index of each augmentation.
    pub class_id: Vec<usize>,
    pub classes: Vec<IsoClass>,
    /// Every ordered pair that was decided, with its witness if any.
    pub witnesses: BTreeMap<(usize, usize), Option<DilatedHomotopy>>,
    pub audit: AuditReport,
}

impl IsoClassification {
    /// The partition as sets of augmentations, independent of input order.
    pub fn partition(&self) -> Vec<Vec<Augmentation>> {
        let mut out: Vec<Vec<Augmentation>> = self
            .classes
            .iter()
            .map(|c| {
                let mut v: Vec<Augmentation> = c.members.iter().map(|&i| self.augmentations[i].clone()).collect();
                v.sort();
                v
            })
            .collect();
        out.sort();
        out
    }

    pub fn witness(&self, i: usize, j: usize) -> Option<&DilatedHomotopy> {
        self.witnesses.get(&(i, j)).and_then(|w| w.as_ref())
    }
}

struct UnionFind(Vec<usize>);

impl UnionFind {
    fn new(n: usize) -> Self {
        UnionFind((0..n).collect())
    }

    fn find(&mut self, mut x: usize) -> usize {
        while self.0[x] != x {
            self.0[x] = self.0[self.0[x]];
            x = self.0[x];
        }
        x
    }

    /// The smaller root survives, so a root is always its class minimum.
    fn union(&mut self, a: usize, b: usize) {
        let (ra, rb) = (self.find(a), self.find(b));
        if ra != rb {
            let (lo, hi) = if ra < rb { (ra, rb) } else { (rb, ra) };
            self.0[hi] = lo;
        }
    }
}

/// Enumerates and classifies all augmentations of `dga`.
pub fn classify(dga: &Dga, opts: &ClassifyOptions) -> Result<IsoClassification, ClassifyError> {
    let augs = enumerate_augmentations(dga);
    classify_augmentations(dga, augs, opts)
}

/// Classifies a given list of augmentations.
pub fn classify_augmentations(
    dga: &Dga,
    augs: Vec<Augmentation>,
    opts: &ClassifyOptions,
) -> Result<IsoClassification, ClassifyError> {
    let mode = opts.mode;
    classify_with_decider(dga, augs, opts, &|a, b| find_with_mode(dga, a, b, mode))
}

/// Classification driven by an arbitrary pairwise decision procedure.
pub fn classify_with_decider<F>(
    dga: &Dga,
    augs: Vec<Augmentation>,
    opts: &ClassifyOptions,
    decide: &F,
) -> Result<IsoClassification, ClassifyError>
where
    F: Fn(&Augmentation, &Augmentation) -> Option<DilatedHomotopy> + Sync,
{
    if augs.len() > opts.limit {
        return Err(ClassifyError::TooManyAugmentations {
            count: augs.len(),
            limit: opts.limit,
        });
    }
    let n = augs.len();
    let mut uf = UnionFind::new(n);
    let mut witnesses = BTreeMap::new();
    let mut reps: Vec<usize> = Vec::new();

    for i in 0..n {
        let results = par::map_slice(&reps, |&r| decide(&augs[i], &augs[r]));
        let mut joined = false;
        for (&r, w) in reps.iter().zip(results) {
            if w.is_some() {
                uf.union(i, r);
                joined = true;
            }
            witnesses.insert((i, r), w);
        }
        if !joined {
            reps.push(i);
        }
        // merged representatives leave the frontier
        let mut seen = Vec::new();
        reps.retain(|&r| {
            let root = uf.find(r);
            if seen.contains(&root) {
                false
            } else {
                seen.push(root);
                true
            }
        });
    }

    let mut class_of_root: BTreeMap<usize, usize> = BTreeMap::new();
    let mut class_id = vec![0; n];
    let mut members: Vec<Vec<usize>> = Vec::new();
    for (i, slot) in class_id.iter_mut().enumerate() {
        let root = uf.find(i);
        let next = class_of_root.len();
        let c = *class_of_root.entry(root).or_insert(next);
        if c == members.len() {
            members.push(Vec::new());
        }
        members[c].push(i);
        *slot = c;
    }

    let mut audit = AuditReport::default();
    let pairs = audit_pairs(opts.full_audit, n, &members, &witnesses);
    let decided = par::map_slice(&pairs, |&(i, j)| decide(&augs[i], &augs[j]));
    for (&(i, j), w) in pairs.iter().zip(decided) {
        let same = class_id[i] == class_id[j];
        let ok = w.is_some();
        if let Some(Some(prev)) = witnesses.get(&(j, i)) {
            if !ok {
                audit
                    .symmetry
                    .push(format!("#{j} ~ #{i} via d = {} but #{i} !~ #{j}", prev.d.to_text()));
            }
        } else if let Some(None) = witnesses.get(&(j, i)) {
            if ok {
                audit.symmetry.push(format!("#{i} ~ #{j} but #{j} !~ #{i}"));
            }
        }
        if same != ok {
            let msg = if same {
                format!("#{i} and #{j} share class {} but no witness exists", class_id[i])
            } else {
                format!("#{i} ~ #{j} across classes {} and {}", class_id[i], class_id[j])
            };
            audit.transitivity.push(msg);
        }
        witnesses.entry((i, j)).or_insert(w);
    }
    audit.pairs_checked = pairs.len();

    let bch: Vec<Option<BTreeMap<i32, usize>>> =
        par::map_slice(&augs, |e| bilinearized_cohomology_dims(dga, e, e).ok());
    let classes: Vec<IsoClass> = members
        .into_iter()
        .map(|ms| {
            let rep = ms[0];
            for &m in &ms {
                match &bch[m] {
                    None => audit.invariance.push(format!("#{m}: bilinearized differential does not square to zero")),
                    Some(d) if Some(d) != bch[rep].as_ref() => {
                        audit.invariance.push(format!("#{m} and representative #{rep} have different bilinearized dimensions"))
                    }
                    _ => {}
                }
            }
            let dilation_only = ms[1..]
                .iter()
                .all(|&m| find_with_mode(dga, &augs[rep], &augs[m], SearchMode::DilationOnly).is_some());
            IsoClass {
                members: ms,
                dilation_only,
                bch: bch[rep].clone().unwrap_or_default(),
            }
        })
        .collect();

    Ok(IsoClassification {
        augmentations: augs,
        class_id,
        classes,
        witnesses,
        audit,
    })
}

/// Reversed frontier pairs plus the pairs joining consecutive class members
/// in both directions, or every ordered pair in full audit mode.
fn audit_pairs(
    full: bool,
    n: usize,
    members: &[Vec<usize>],
    witnesses: &BTreeMap<(usize, usize), Option<DilatedHomotopy>>,
) -> Vec<(usize, usize)> {
    let mut pairs: Vec<(usize, usize)> = Vec::new();
    if full {
        for i in 0..n {
            for j in 0..n {
                if i != j {
                    pairs.push((i, j));
                }
            }
        }
        return pairs;
    }
    pairs.extend(witnesses.keys().map(|&(i, j)| (j, i)));
    for ms in members {
        for w in ms.windows(2) {
            pairs.push((w[0], w[1]));
            pairs.push((w[1], w[0]));
        }
    }
    pairs.sort_unstable();
    pairs.dedup();
    pairs
}

/// The audit section of a classification as text.
pub fn audit_report(c: &IsoClassification) -> String {
    let mut out = format!(
        "augmentations: {}\nclasses: {}\n",
        c.augmentations.len(),
        c.classes.len()
    );
    out.push_str(&c.audit.to_string());
    out.push_str(if c.audit.is_clean() { "result: clean\n" } else { "result: VIOLATIONS\n" });
    out
}
