//! Golden summaries of a corpus entry: augmentation count and class table.
//!
//! [`from_oracle`] computes one with the brute-force routines only;
//! [`from_classification`] renders a fast-path classification in the same
//! shape so the two can be compared with `==`.

use std::collections::BTreeMap;

use augcat::augment::Augmentation;
use augcat::classify::IsoClassification;
use augcat::dga::Dga;
use serde::{Deserialize, Serialize};

use crate::{all_witnesses, brute_augmentations, naive_bch_dims, oracle_classes};

pub const SCHEMA: u32 = 1;

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Golden {
    pub schema: u32,
    pub id: String,
    pub field: String,
    pub augmentations: usize,
    pub classes: Vec<GoldenClass>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct GoldenClass {
    pub size: usize,
    /// Smallest member in canonical order, in augmentation text form.
    pub representative: String,
    pub dilation_only: bool,
    /// Bilinearized cohomology of `(rep, rep)` keyed by Hom-degree.
    pub bch: BTreeMap<i32, usize>,
}

impl Golden {
    pub fn to_json(&self) -> String {
        let mut s = serde_json::to_string_pretty(self).expect("golden serializes");
        s.push('\n');
        s
    }

    pub fn from_json(text: &str) -> Result<Golden, serde_json::Error> {
        serde_json::from_str(text)
    }
}

fn sorted_classes(classes: Vec<GoldenClass>, reps: Vec<Augmentation>) -> Vec<GoldenClass> {
    let mut paired: Vec<(Augmentation, GoldenClass)> = reps.into_iter().zip(classes).collect();
    paired.sort_by(|a, b| a.0.cmp(&b.0));
    paired.into_iter().map(|(_, c)| c).collect()
}

/// Golden computed by exhaustive search; `None` if a search is too large.
pub fn from_oracle(dga: &Dga, id: &str) -> Option<Golden> {
    let augs = brute_augmentations(dga)?;
    let classes = oracle_classes(dga, &augs)?;
    let mut reps = Vec::new();
    let mut out = Vec::new();
    for members in classes {
        let rep = &augs[members[0]];
        let mut dilation_only = true;
        for &m in &members[1..] {
            let ws = all_witnesses(dga, rep, &augs[m])?;
            dilation_only &= ws.iter().any(|w| w.k_is_zero());
        }
        out.push(GoldenClass {
            size: members.len(),
            representative: rep.to_text(dga),
            dilation_only,
            bch: naive_bch_dims(dga, rep, rep)?,
        });
        reps.push(rep.clone());
    }
    Some(Golden {
        schema: SCHEMA,
        id: id.to_string(),
        field: dga.field().label(),
        augmentations: augs.len(),
        classes: sorted_classes(out, reps),
    })
}

/// The same summary read off a fast-path classification.
pub fn from_classification(dga: &Dga, id: &str, c: &IsoClassification) -> Golden {
    let mut reps = Vec::new();
    let classes = c
        .classes
        .iter()
        .map(|k| {
            let rep = k.members.iter().map(|&i| &c.augmentations[i]).min().unwrap();
            reps.push(rep.clone());
            GoldenClass {
                size: k.len(),
                representative: rep.to_text(dga),
                dilation_only: k.dilation_only,
                bch: k.bch.clone(),
            }
        })
        .collect();
    Golden {
        schema: SCHEMA,
        id: id.to_string(),
        field: dga.field().label(),
        augmentations: c.augmentations.len(),
        classes: sorted_classes(classes, reps),
    }
}
