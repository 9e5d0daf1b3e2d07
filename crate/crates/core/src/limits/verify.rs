//! Ball-based verification of limit classifications.

use std::collections::{BTreeMap, BTreeSet};

use serde::Serialize;

use super::{LimitClass, SequenceFamily};
use crate::algnum::LambdaSpec;
use crate::error::{Error, Result};
use crate::marking::{agreement_of, relation_set, MarkedGroup, RelationSet};
use crate::metabelian::Word;

/// One line of a verification table: agreement radius between the `n`-th term and its
/// declared limit.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct VerifyRow {
    pub n: i64,
    pub k: i64,
    pub l: i64,
    pub limit: String,
    pub agreement: usize,
}

/// `2, 4, 8, …` up to `max_n`.
pub fn geometric_samples(max_n: i64) -> Vec<i64> {
    std::iter::successors(Some(2i64), |n| n.checked_mul(2)).take_while(|n| *n <= max_n).collect()
}

pub fn verify_family(
    lambda: &LambdaSpec,
    fam: &SequenceFamily,
    class: &LimitClass,
    samples: &[i64],
    radius: usize,
) -> Result<Vec<VerifyRow>> {
    let mut targets: BTreeMap<String, RelationSet> = BTreeMap::new();
    let mut rows = Vec::with_capacity(samples.len());
    for &n in samples {
        let (k, l) = fam.eval(n)?;
        let target = class
            .target_for((k, l))
            .ok_or_else(|| Error::Domain(format!("no declared limit for σ = ({k}, {l})")))?;
        let key = target.to_string();
        if !targets.contains_key(&key) {
            targets.insert(key.clone(), relation_set(&target, radius)?);
        }
        let term = relation_set(&MarkedGroup::g_sigma(lambda, k, l)?, radius)?;
        rows.push(VerifyRow { n, k, l, agreement: agreement_of(&term, &targets[&key]), limit: key });
    }
    Ok(rows)
}

pub fn is_nondecreasing(rows: &[VerifyRow]) -> bool {
    rows.windows(2).all(|w| w[0].agreement <= w[1].agreement)
}

/// A separating word with the per-sample verdicts (`true` when trivial).
pub type DivergenceWitness = (Word, Vec<(i64, bool)>);

/// The shortest word of length at most `radius` that is trivial for some sampled terms and
/// nontrivial for others, with the per-sample verdicts.
pub fn divergence_witness(
    lambda: &LambdaSpec,
    fam: &SequenceFamily,
    samples: &[i64],
    radius: usize,
) -> Result<Option<DivergenceWitness>> {
    let sets = samples
        .iter()
        .map(|&n| {
            let (k, l) = fam.eval(n)?;
            relation_set(&MarkedGroup::g_sigma(lambda, k, l)?, radius)
        })
        .collect::<Result<Vec<_>>>()?;
    let all: BTreeSet<&Word> = sets.iter().flat_map(|s| s.words.iter()).collect();
    for w in all {
        let hits: Vec<(i64, bool)> = samples.iter().zip(&sets).map(|(&n, s)| (n, s.contains(w))).collect();
        if hits.iter().any(|h| h.1) && hits.iter().any(|h| !h.1) {
            return Ok(Some((w.clone(), hits)));
        }
    }
    Ok(None)
}
