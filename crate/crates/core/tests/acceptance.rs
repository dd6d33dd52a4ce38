//! Acceptance suite over the corpus in `corpus/`.
//!
//! Runs without the libtest harness so every criterion prints exactly one
//! `PASS`/`FAIL` line. Exits nonzero if any criterion fails.

use std::collections::BTreeMap;
use std::path::PathBuf;
use std::process::ExitCode;
use std::time::Instant;

use augcat::augment::{enumerate_augmentations, is_augmentation, Augmentation};
use augcat::classify::{classify, ClassifyOptions};
use augcat::homcx::{bilinearized_cohomology_dims, BilinComplex, Hom0Element, HomSlice};
use augcat::homotopy::{
    apply_dilation, compose_homotopy_dilation, decompose_dilated_homotopy, find_dilated_homotopy, find_with_mode,
    is_dilated_homotopy, DilationTuple, SearchMode,
};
use augcat::{Dga, Elem, Field};
use augcat_oracle::golden::{self, Golden};
use augcat_oracle::{all_witnesses, brute_augmentations, naive_bch_dims, naive_check};
use rand::rngs::StdRng;
use rand::{Rng, SeedableRng};

const SEED: u64 = 0x5eed_a11c;
const SAMPLES_PER_PAIR: usize = 1000;
const EXHAUSTIVE_PAIRS: usize = 64;

struct Entry {
    id: String,
    dga: Dga,
    augs: Vec<Augmentation>,
}

impl Entry {
    fn field(&self) -> &Field {
        self.dga.field()
    }

    /// Ordered pairs of augmentation indices: all of them when there are at
    /// most 64 augmentations, otherwise a seeded sample.
    fn pairs(&self) -> Vec<(usize, usize)> {
        let n = self.augs.len();
        if n <= EXHAUSTIVE_PAIRS {
            return (0..n).flat_map(|i| (0..n).map(move |j| (i, j))).collect();
        }
        let mut rng = StdRng::seed_from_u64(SEED ^ n as u64);
        (0..EXHAUSTIVE_PAIRS * EXHAUSTIVE_PAIRS)
            .map(|_| (rng.gen_range(0..n), rng.gen_range(0..n)))
            .collect()
    }
}

fn corpus_dir() -> PathBuf {
    PathBuf::from(env!("CARGO_MANIFEST_DIR")).join("../../corpus")
}

fn load_corpus() -> Vec<Entry> {
    let mut paths: Vec<PathBuf> = std::fs::read_dir(corpus_dir())
        .expect("corpus directory")
        .map(|e| e.unwrap().path())
        .filter(|p| p.extension().is_some_and(|x| x == "dga"))
        .collect();
    paths.sort();
    paths
        .into_iter()
        .map(|p| {
            let text = std::fs::read_to_string(&p).unwrap();
            let dga = Dga::parse(&text).unwrap_or_else(|e| panic!("{}: {e}", p.display()));
            assert!(dga.validate().is_valid(), "{}: {}", p.display(), dga.validate());
            let augs = enumerate_augmentations(&dga);
            Entry {
                id: p.file_stem().unwrap().to_string_lossy().into_owned(),
                dga,
                augs,
            }
        })
        .collect()
}

fn all_tuples(field: &Field, n: usize) -> Vec<Vec<Elem>> {
    let mut out = vec![Vec::new()];
    for _ in 0..n {
        out = out
            .into_iter()
            .flat_map(|t| {
                field.units().map(move |u| {
                    let mut t = t.clone();
                    t.push(u);
                    t
                })
            })
            .collect();
    }
    out
}

fn random_unit(field: &Field, rng: &mut StdRng) -> Elem {
    field.elem(rng.gen_range(1..field.order())).unwrap()
}

fn random_elem(field: &Field, rng: &mut StdRng) -> Elem {
    field.elem(rng.gen_range(0..field.order())).unwrap()
}

type Outcome = Result<String, String>;
type Criterion = (&'static str, fn(&[Entry]) -> Outcome);

fn ensure(cond: bool, msg: impl FnOnce() -> String) -> Result<(), String> {
    if cond {
        Ok(())
    } else {
        Err(msg())
    }
}

/// Fast decision agrees with exhaustive (d, K) search; witnesses check.
fn c1_equivalence(corpus: &[Entry]) -> Outcome {
    let mut pairs = 0;
    let mut iso = 0;
    for en in corpus {
        let brute = brute_augmentations(&en.dga).ok_or("oracle enumeration too large")?;
        let mut fast = en.augs.clone();
        fast.sort();
        ensure(fast == brute, || format!("{}: augmentation sets differ", en.id))?;
        for (i, j) in en.pairs() {
            let (e1, e2) = (&en.augs[i], &en.augs[j]);
            let found = find_dilated_homotopy(&en.dga, e1, e2);
            let truth = !all_witnesses(&en.dga, e1, e2).ok_or("oracle search too large")?.is_empty();
            ensure(found.is_some() == truth, || {
                format!("{} #{i} -> #{j}: fast {} oracle {truth}", en.id, found.is_some())
            })?;
            if let Some(w) = &found {
                let ok = is_dilated_homotopy(&en.dga, e1, e2, w).map_err(|e| e.to_string())?.holds();
                ensure(ok && naive_check(&en.dga, e1, e2, w), || {
                    format!("{} #{i} -> #{j}: witness rejected", en.id)
                })?;
                iso += 1;
            }
            pairs += 1;
        }
    }
    Ok(format!("{pairs} ordered pairs, {iso} isomorphic, 0 mismatches"))
}

/// A random Hom^0 element with every alpha nonzero; every fourth sample is
/// a random cocycle when the cocycle space allows one.
fn sample_hom0(en: &Entry, basis: &[Hom0Element], rng: &mut StdRng, k: usize) -> Hom0Element {
    let f = en.field();
    let n = en.dga.components();
    if k.is_multiple_of(4) && !basis.is_empty() {
        for _ in 0..16 {
            let mut alpha = vec![Elem::ZERO; n];
            let mut kv: BTreeMap<_, Elem> = BTreeMap::new();
            for b in basis {
                let c = random_elem(f, rng);
                for (a, &x) in alpha.iter_mut().zip(&b.alpha) {
                    *a += f.mul(c, x);
                }
                for (&g, &x) in &b.kcoeffs {
                    *kv.entry(g).or_insert(Elem::ZERO) += f.mul(c, x);
                }
            }
            if alpha.iter().all(|a| !a.is_zero()) {
                kv.retain(|_, v| !v.is_zero());
                return Hom0Element { alpha, kcoeffs: kv };
            }
        }
    }
    let alpha = (0..n).map(|_| random_unit(f, rng)).collect();
    let kv: Vec<Elem> = en.dga.neg_chords().iter().map(|_| random_elem(f, rng)).collect();
    Hom0Element::new(&en.dga, alpha, &kv)
}

fn c2_cocycle_law(corpus: &[Entry]) -> Outcome {
    let mut rng = StdRng::seed_from_u64(SEED);
    let (mut total, mut positive) = (0usize, 0usize);
    for en in corpus {
        for (i, j) in en.pairs() {
            let (e1, e2) = (&en.augs[i], &en.augs[j]);
            let slice = HomSlice::new(&en.dga, e1, e2);
            let basis = slice.cocycle_basis();
            for k in 0..SAMPLES_PER_PAIR {
                let a = sample_hom0(en, &basis, &mut rng, k);
                let cocycle = slice.is_cocycle(&a).map_err(|e| e.to_string())?;
                let h = a.to_homotopy(&en.dga).ok_or("alpha has a zero entry")?;
                let holds = is_dilated_homotopy(&en.dga, e1, e2, &h).map_err(|e| e.to_string())?.holds();
                ensure(cocycle == holds, || {
                    format!("{} #{i} -> #{j}: cocycle {cocycle} homotopy {holds} for\n{}", en.id, a.to_text(&en.dga))
                })?;
                total += 1;
                positive += cocycle as usize;
            }
        }
    }
    ensure(positive > 0 && positive < total, || "samples never split both ways".into())?;
    Ok(format!("{total} samples, {positive} cocycles, 0 mismatches"))
}

fn c3_loop_gate(corpus: &[Entry]) -> Outcome {
    let mut rng = StdRng::seed_from_u64(SEED ^ 3);
    let mut pairs = 0;
    for en in corpus {
        let f = en.field();
        for (i, j) in en.pairs() {
            let (e1, e2) = (&en.augs[i], &en.augs[j]);
            let affected: Vec<usize> = en
                .dga
                .loops()
                .into_iter()
                .filter(|&t| e1.value(t) != e2.value(t))
                .map(|t| en.dga.generator(t).row)
                .collect();
            if affected.is_empty() {
                continue;
            }
            pairs += 1;
            ensure(find_dilated_homotopy(&en.dga, e1, e2).is_none(), || {
                format!("{} #{i} -> #{j}: witness across differing loops", en.id)
            })?;
            let slice = HomSlice::new(&en.dga, e1, e2);
            let basis = slice.cocycle_basis();
            for _ in 0..64 {
                let mut alpha = vec![Elem::ZERO; en.dga.components()];
                for b in &basis {
                    let c = random_elem(f, &mut rng);
                    for (a, &x) in alpha.iter_mut().zip(&b.alpha) {
                        *a += f.mul(c, x);
                    }
                }
                ensure(affected.iter().all(|&c| alpha[c].is_zero()), || {
                    format!("{} #{i} -> #{j}: cocycle with nonzero alpha on an affected component", en.id)
                })?;
            }
        }
    }
    ensure(pairs > 0, || "no corpus pair differs on a loop".into())?;
    Ok(format!("{pairs} pairs differing on a loop, 0 violations"))
}

fn c4_round_trip(corpus: &[Entry]) -> Outcome {
    let mut checked = 0;
    for en in corpus {
        let f = *en.field();
        let tuples = all_tuples(&f, en.dga.components());
        for (i, j) in en.pairs() {
            let (e1, e2) = (&en.augs[i], &en.augs[j]);
            let err = |s: &str| format!("{} #{i} -> #{j}: {s}", en.id);
            if let Some(h) = find_dilated_homotopy(&en.dga, e1, e2) {
                let (mid, kplain, d) = decompose_dilated_homotopy(&en.dga, e1, e2, &h).map_err(|e| err(&e.to_string()))?;
                ensure(is_augmentation(&en.dga, mid.values()).is_ok(), || err("midpoint is not an augmentation"))?;
                ensure(
                    kplain.is_plain() && is_dilated_homotopy(&en.dga, e1, &mid, &kplain).unwrap().holds(),
                    || err("plain part fails"),
                )?;
                let (back, h2) = compose_homotopy_dilation(&en.dga, e1, &mid, &kplain, &d).map_err(|e| err(&e.to_string()))?;
                ensure(&back == e2 && h2 == h, || err("compose(decompose(h)) != h"))?;
                checked += 1;
            }
            if let Some(kp) = find_with_mode(&en.dga, e1, e2, SearchMode::PlainOnly) {
                for t in &tuples {
                    let d = DilationTuple::new(&en.dga, t.clone()).unwrap();
                    let (e3, h) = compose_homotopy_dilation(&en.dga, e1, e2, &kp, &d).map_err(|e| err(&e.to_string()))?;
                    ensure(is_augmentation(&en.dga, e3.values()).is_ok(), || err("composed target invalid"))?;
                    ensure(is_dilated_homotopy(&en.dga, e1, &e3, &h).unwrap().holds(), || err("composed witness fails"))?;
                    let (mid, kp2, d2) = decompose_dilated_homotopy(&en.dga, e1, &e3, &h).map_err(|e| err(&e.to_string()))?;
                    ensure(&mid == e2 && kp2 == kp && d2 == d, || err("decompose(compose) differs"))?;
                    checked += 1;
                }
            }
        }
    }
    Ok(format!("{checked} round trips exact"))
}

fn c5_specializations(corpus: &[Entry]) -> Outcome {
    let (mut one, mut noneg) = (Vec::new(), Vec::new());
    for en in corpus {
        let full = classify(&en.dga, &ClassifyOptions::default()).map_err(|e| e.to_string())?;
        if en.dga.components() == 1 {
            let plain = classify(&en.dga, &ClassifyOptions::with_mode(SearchMode::PlainOnly)).unwrap();
            ensure(full.partition() == plain.partition(), || format!("{}: differs from plain homotopy", en.id))?;
            one.push(en.id.as_str());
        }
        if en.dga.neg_chords().is_empty() {
            let dil = classify(&en.dga, &ClassifyOptions::with_mode(SearchMode::DilationOnly)).unwrap();
            ensure(full.partition() == dil.partition(), || format!("{}: differs from pure dilation", en.id))?;
            noneg.push(en.id.as_str());
        }
    }
    ensure(!one.is_empty() && !noneg.is_empty(), || "no applicable corpus entries".into())?;
    Ok(format!("{} one-component and {} chord-free entries equal", one.len(), noneg.len()))
}

fn c6_audits(corpus: &[Entry]) -> Outcome {
    let mut pairs = 0;
    for en in corpus {
        let opts = ClassifyOptions {
            full_audit: true,
            ..Default::default()
        };
        let c = classify(&en.dga, &opts).map_err(|e| e.to_string())?;
        ensure(c.audit.symmetry.is_empty() && c.audit.transitivity.is_empty(), || {
            format!("{}:\n{}", en.id, c.audit)
        })?;
        pairs += c.audit.pairs_checked;
    }
    Ok(format!("{} entries, {pairs} ordered pairs audited, 0 violations", corpus.len()))
}

fn c7_chain_invariance(corpus: &[Entry]) -> Outcome {
    let mut complexes = 0;
    for en in corpus {
        let f = *en.field();
        let tuples = all_tuples(&f, en.dga.components());
        for (i, j) in en.pairs() {
            let (e1, e2) = (&en.augs[i], &en.augs[j]);
            BilinComplex::new(&en.dga, e1, e2)
                .check_chain_law(&f)
                .map_err(|e| format!("{} #{i} -> #{j}: {e}", en.id))?;
            complexes += 1;
            let dims = bilinearized_cohomology_dims(&en.dga, e1, e2).unwrap();
            if en.augs.len() <= 20 || i == j {
                let naive = naive_bch_dims(&en.dga, e1, e2).ok_or("oracle rank too large")?;
                ensure(naive == dims, || format!("{} #{i} -> #{j}: dims differ from oracle", en.id))?;
            }
            for t in &tuples {
                let d = DilationTuple::new(&en.dga, t.clone()).unwrap();
                let (a, b) = (apply_dilation(&en.dga, e1, &d), apply_dilation(&en.dga, e2, &d));
                ensure(bilinearized_cohomology_dims(&en.dga, &a, &b).unwrap() == dims, || {
                    format!("{} #{i} -> #{j}: dims change under dilation {}", en.id, d.to_text())
                })?;
            }
        }
        let c = classify(&en.dga, &ClassifyOptions::default()).map_err(|e| e.to_string())?;
        ensure(c.audit.invariance.is_empty(), || format!("{}:\n{}", en.id, c.audit))?;
        for class in &c.classes {
            for &m in &class.members {
                let e = &c.augmentations[m];
                ensure(bilinearized_cohomology_dims(&en.dga, e, e).unwrap() == class.bch, || {
                    format!("{}: class dims not constant", en.id)
                })?;
            }
        }
    }
    Ok(format!("{complexes} complexes square to zero; dims class- and dilation-invariant"))
}

fn c8_char2(corpus: &[Entry]) -> Outcome {
    let mut gf2_witnesses = 0;
    let mut needs_dilation: BTreeMap<&str, usize> = BTreeMap::new();
    for en in corpus {
        let m = en.field().m();
        for (i, j) in en.pairs() {
            let (e1, e2) = (&en.augs[i], &en.augs[j]);
            let ws = all_witnesses(&en.dga, e1, e2).ok_or("oracle search too large")?;
            if m == 1 {
                ensure(ws.iter().all(|w| w.d.is_trivial()), || format!("{} #{i} -> #{j}: d != 1 over GF(2)", en.id))?;
                gf2_witnesses += ws.len();
            } else if !ws.is_empty() && ws.iter().all(|w| w.d.entries().windows(2).any(|p| p[0] != p[1])) {
                *needs_dilation.entry(en.id.as_str()).or_default() += 1;
            }
        }
    }
    for id in ["dgaA_gf4", "hopf_gf4"] {
        ensure(needs_dilation.contains_key(id), || format!("{id}: no pair needs a dilation"))?;
    }
    let list: Vec<String> = needs_dilation.iter().map(|(k, v)| format!("{k}:{v}")).collect();
    Ok(format!(
        "{gf2_witnesses} GF(2) witnesses all d = 1; pairs needing dilation over GF(4): {}",
        list.join(" ")
    ))
}

fn c9_counts(corpus: &[Entry]) -> Outcome {
    let mut goldens = BTreeMap::new();
    for en in corpus {
        let path = corpus_dir().join(format!("{}.json", en.id));
        let text = std::fs::read_to_string(&path).map_err(|e| format!("{}: {e}", path.display()))?;
        let on_disk = Golden::from_json(&text).map_err(|e| format!("{}: {e}", path.display()))?;
        let oracle = golden::from_oracle(&en.dga, &en.id).ok_or("oracle too large")?;
        let c = classify(&en.dga, &ClassifyOptions::default()).map_err(|e| e.to_string())?;
        let fast = golden::from_classification(&en.dga, &en.id, &c);
        ensure(oracle == on_disk, || format!("{}: golden differs from oracle", en.id))?;
        ensure(fast == on_disk, || format!("{}: fast path differs from golden", en.id))?;
        goldens.insert(en.id.clone(), on_disk);
    }
    let expect = [("trefoil_gf2", 5, None), ("dgaA_gf4", 4, Some(2)), ("dgaB_gf4", 4, Some(1))];
    let mut seen = Vec::new();
    for (id, augs, classes) in expect {
        let g = goldens.get(id).ok_or_else(|| format!("{id} missing"))?;
        ensure(g.augmentations == augs, || format!("{id}: {} augmentations", g.augmentations))?;
        if let Some(k) = classes {
            ensure(g.classes.len() == k, || format!("{id}: {} classes", g.classes.len()))?;
        }
        seen.push(format!("{id}={}/{}", g.augmentations, g.classes.len()));
    }
    Ok(format!("{} goldens = oracle = fast path; {}", goldens.len(), seen.join(" ")))
}

fn main() -> ExitCode {
    let corpus = load_corpus();
    let criteria: [Criterion; 9] = [
        ("decision equals exhaustive witness search", c1_equivalence),
        ("cocycle test equals homotopy check", c2_cocycle_law),
        ("differing loops block isomorphism", c3_loop_gate),
        ("compose and decompose are inverse", c4_round_trip),
        ("one component: plain; no degree -1 chords: dilation", c5_specializations),
        ("symmetry and transitivity audits", c6_audits),
        ("chain law and invariance of bilinearized dims", c7_chain_invariance),
        ("characteristic 2 dilation behaviour", c8_char2),
        ("corpus counts match oracle and goldens", c9_counts),
    ];
    let mut failed = 0;
    for (k, (name, run)) in criteria.iter().enumerate() {
        let start = Instant::now();
        let outcome = std::panic::catch_unwind(|| run(&corpus)).unwrap_or_else(|_| Err("panicked".into()));
        let secs = start.elapsed().as_secs_f64();
        match outcome {
            Ok(detail) => println!("PASS [{}] {name}: {detail} ({secs:.2}s)", k + 1),
            Err(why) => {
                failed += 1;
                println!("FAIL [{}] {name}: {why} ({secs:.2}s)", k + 1);
            }
        }
    }
    println!("acceptance: {} passed, {failed} failed", criteria.len() - failed);
    if failed == 0 {
        ExitCode::SUCCESS
    } else {
        ExitCode::FAILURE
    }
}
