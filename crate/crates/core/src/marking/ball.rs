//! Relation sets on balls of the free group and the induced distance on marked groups.

use serde::Serialize;

use super::MarkedGroup;
use crate::error::{domain_err, Result};
use crate::laurent::{IdealShape1, IdealShape2};
use crate::metabelian::{default_marking, letter_images, melement_is_identity, GElement, Letter, MElement, Word};

/// Default cap on ball radii; `MARKED_LIMITS_RADIUS_CAP` overrides it.
pub const DEFAULT_RADIUS_CAP: usize = 8;

pub fn radius_cap() -> usize {
    std::env::var("MARKED_LIMITS_RADIUS_CAP")
        .ok()
        .and_then(|v| v.trim().parse().ok())
        .unwrap_or(DEFAULT_RADIUS_CAP)
}

/// All reduced words of length at most `radius` that are trivial in a marked group, sorted by
/// length and then lexicographically (`a < b < A < B`).
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct RelationSet {
    pub radius: usize,
    pub words: Vec<Word>,
}

impl RelationSet {
    pub fn contains(&self, w: &Word) -> bool {
        self.words.binary_search(w).is_ok()
    }

    pub fn of_length(&self, n: usize) -> &[Word] {
        let lo = self.words.partition_point(|w| w.len() < n);
        let hi = self.words.partition_point(|w| w.len() <= n);
        &self.words[lo..hi]
    }
}

trait Evaluator: Sync {
    type State: Clone + Send;
    fn root(&self) -> Self::State;
    fn step(&self, s: &Self::State, l: Letter) -> Self::State;
    fn is_identity(&self, s: &Self::State) -> bool;
}

struct GEval {
    ideal: IdealShape1,
    imgs: [GElement; 4],
}

impl Evaluator for GEval {
    type State = GElement;
    fn root(&self) -> GElement {
        GElement::identity()
    }
    fn step(&self, s: &GElement, l: Letter) -> GElement {
        s.mul(&self.imgs[l.index()], &self.ideal)
    }
    fn is_identity(&self, s: &GElement) -> bool {
        s.is_identity(&self.ideal)
    }
}

struct MEval {
    ideal: IdealShape2,
}

impl Evaluator for MEval {
    type State = MElement;
    fn root(&self) -> MElement {
        MElement::identity()
    }
    fn step(&self, s: &MElement, l: Letter) -> MElement {
        s.mul_letter(l)
    }
    fn is_identity(&self, s: &MElement) -> bool {
        melement_is_identity(&self.ideal, s)
    }
}

fn g_eval(ideal: &IdealShape1, words: &(Word, Word)) -> GEval {
    let base = default_marking();
    let s = (
        crate::metabelian::gelement_eval(ideal, &words.0, &base),
        crate::metabelian::gelement_eval(ideal, &words.1, &base),
    );
    GEval { ideal: ideal.clone(), imgs: letter_images(ideal, &s) }
}

fn dfs<E: Evaluator>(ev: &E, state: &E::State, word: &mut Vec<Letter>, remaining: usize, out: &mut Vec<Word>) {
    if ev.is_identity(state) {
        out.push(Word::from_letters(word.iter().copied()));
    }
    if remaining == 0 {
        return;
    }
    for l in Letter::ALL {
        if word.last() == Some(&l.inverse()) {
            continue;
        }
        let next = ev.step(state, l);
        word.push(l);
        dfs(ev, &next, word, remaining - 1, out);
        word.pop();
    }
}

fn enumerate_sequential<E: Evaluator>(ev: &E, radius: usize) -> Vec<Word> {
    let mut out = Vec::new();
    dfs(ev, &ev.root(), &mut Vec::new(), radius, &mut out);
    out.sort();
    out
}

/// Reduced prefixes of exactly `len` letters with their states.
#[cfg(feature = "parallel")]
fn prefixes<E: Evaluator>(ev: &E, len: usize) -> Vec<(Vec<Letter>, E::State)> {
    let mut layer = vec![(Vec::new(), ev.root())];
    for _ in 0..len {
        let mut next = Vec::with_capacity(layer.len() * 3);
        for (w, s) in &layer {
            for l in Letter::ALL {
                if w.last() == Some(&l.inverse()) {
                    continue;
                }
                let mut w2 = w.clone();
                w2.push(l);
                next.push((w2, ev.step(s, l)));
            }
        }
        layer = next;
    }
    layer
}

#[cfg(feature = "parallel")]
fn enumerate_parallel<E: Evaluator>(ev: &E, radius: usize) -> Vec<Word> {
    use rayon::prelude::*;
    let split = radius.min(2);
    let mut out = Vec::new();
    if split > 0 {
        dfs(ev, &ev.root(), &mut Vec::new(), split - 1, &mut out);
    }
    let tails: Vec<Vec<Word>> = prefixes(ev, split)
        .into_par_iter()
        .map(|(mut w, s)| {
            let mut local = Vec::new();
            dfs(ev, &s, &mut w, radius - split, &mut local);
            local
        })
        .collect();
    out.extend(tails.into_iter().flatten());
    out.sort();
    out
}

/// All reduced words of length at most `radius`, in canonical order.
pub fn ball_words(radius: usize) -> Vec<Word> {
    struct Free;
    impl Evaluator for Free {
        type State = ();
        fn root(&self) {}
        fn step(&self, _: &(), _: Letter) {}
        fn is_identity(&self, _: &()) -> bool {
            true
        }
    }
    enumerate_sequential(&Free, radius)
}

fn check_radius(radius: usize) -> Result<()> {
    let cap = radius_cap();
    if radius > cap {
        return domain_err(format!("radius {radius} exceeds the cap {cap}"));
    }
    Ok(())
}

fn run(g: &MarkedGroup, radius: usize, parallel: bool) -> Vec<Word> {
    macro_rules! go {
        ($ev:expr) => {{
            let ev = $ev;
            #[cfg(feature = "parallel")]
            if parallel {
                return enumerate_parallel(&ev, radius);
            }
            let _ = parallel;
            enumerate_sequential(&ev, radius)
        }};
    }
    match g {
        MarkedGroup::G { ideal, words } => go!(g_eval(ideal, words)),
        MarkedGroup::M { ideal } => go!(MEval { ideal: ideal.clone() }),
    }
}

/// The relation set on the ball of the given radius; parallel when the `parallel` feature is on.
pub fn relation_set(g: &MarkedGroup, radius: usize) -> Result<RelationSet> {
    check_radius(radius)?;
    Ok(RelationSet { radius, words: run(g, radius, true) })
}

/// Single-threaded enumeration.
pub fn relation_set_sequential(g: &MarkedGroup, radius: usize) -> Result<RelationSet> {
    check_radius(radius)?;
    Ok(RelationSet { radius, words: run(g, radius, false) })
}

/// The largest `r` up to the common radius on which the two sets agree.
pub fn agreement_of(s1: &RelationSet, s2: &RelationSet) -> usize {
    let radius = s1.radius.min(s2.radius);
    (1..=radius).find(|&r| s1.of_length(r) != s2.of_length(r)).map_or(radius, |r| r - 1)
}

/// The largest `r ≤ cap` with equal relation sets on the ball of radius `r`; the distance
/// between the marked groups is `2^{-r}`.
pub fn agreement_radius(g1: &MarkedGroup, g2: &MarkedGroup, cap: usize) -> Result<usize> {
    let s1 = relation_set(g1, cap)?;
    let s2 = relation_set(g2, cap)?;
    Ok(agreement_of(&s1, &s2))
}

#[cfg(test)]
mod tests {
    use super::*;

    fn g(s: &str) -> MarkedGroup {
        s.parse().unwrap()
    }

    fn w(s: &str) -> Word {
        s.parse().unwrap()
    }

    #[test]
    fn free_metabelian_small_ball() {
        let r = relation_set(&g("M[0]"), 4).unwrap();
        assert_eq!(r.words, vec![Word::empty()]);
    }

    #[test]
    fn bs12_ball() {
        let r = relation_set(&g("G[x - 2]"), 5).unwrap();
        assert!(r.contains(&w("abABB")));
        assert!(r.contains(&w("abABB").inverse()));
        assert!(r.contains(&Word::empty()));
        for x in &r.words {
            assert!(r.contains(&x.inverse()));
        }
    }

    #[test]
    fn abelian_ball() {
        let r = relation_set(&g("Z2"), 4).unwrap();
        assert!(r.contains(&w("abAB")));
    }

    #[test]
    fn agreement_examples() {
        assert_eq!(agreement_radius(&g("G[x-2]"), &g("G[x-2]"), 6).unwrap(), 6);
        assert_eq!(agreement_radius(&g("G[x-2]"), &g("M[[x-2]]"), 6).unwrap(), 4);
        assert_eq!(agreement_radius(&g("M[0]"), &g("Z2"), 6).unwrap(), 3);
    }

    #[test]
    fn parallel_matches_sequential() {
        for s in ["G[x-2]", "M[[x^2+x+1; y-1]]", "G[0]:(2,3)"] {
            let gg = g(s);
            assert_eq!(relation_set(&gg, 6).unwrap(), relation_set_sequential(&gg, 6).unwrap());
        }
    }

    #[test]
    fn radius_cap_enforced() {
        assert!(relation_set(&g("G[x-2]"), radius_cap() + 1).is_err());
    }

    #[test]
    fn inner_state_matches_direct_eval() {
        let b = IdealShape2::Zero;
        let word = w("abAAbaBB");
        let mut st = MElement::identity();
        for &l in word.letters() {
            st = st.mul_letter(l);
        }
        assert_eq!(melement_is_identity(&b, &st), crate::metabelian::is_identity_M(&b, &word));
    }
}
