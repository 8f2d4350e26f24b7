//! Commutator dynamics and minimal Engel sinks.
//!
//! The left sink of `h` in a scope `K` is the union of the limit cycles of
//! `u ↦ [u, h]` over seeds `u ∈ K`; the right sink is the union of the limit
//! cycles of `u ↦ [u, x]` seeded at `h`, over `x ∈ K`. Both contain the identity.

use std::collections::{BTreeMap, HashMap};

use serde::Serialize;

use crate::automorphism::{Automorphism, Semidirect};
use crate::error::{Error, Result};
use crate::group::{FiniteGroup, Group, QuotientGroup, Subgroup};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum Side {
    Left,
    Right,
}

impl Side {
    pub fn as_str(&self) -> &'static str {
        match self {
            Side::Left => "left",
            Side::Right => "right",
        }
    }
}

/// Seeds of an automorphism sink: `G` itself or `G⟨φ⟩`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum Scope {
    Base,
    Extension,
}

impl Scope {
    pub fn as_str(&self) -> &'static str {
        match self {
            Scope::Base => "base",
            Scope::Extension => "extension",
        }
    }
}

/// `steps[0] = seed`, `steps[k+1] = step(steps[k])`, stopped before the first repeat.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Trajectory {
    pub seed: usize,
    pub steps: Vec<usize>,
    pub tail_start: usize,
}

impl Trajectory {
    pub fn walk(seed: usize, step: impl Fn(usize) -> usize) -> Self {
        let mut first_visit: HashMap<usize, usize> = HashMap::new();
        let mut steps = Vec::new();
        let mut u = seed;
        loop {
            if let Some(&k) = first_visit.get(&u) {
                return Trajectory {
                    seed,
                    steps,
                    tail_start: k,
                };
            }
            first_visit.insert(u, steps.len());
            steps.push(u);
            u = step(u);
        }
    }

    pub fn tail(&self) -> &[usize] {
        &self.steps[..self.tail_start]
    }

    pub fn cycle(&self) -> &[usize] {
        &self.steps[self.tail_start..]
    }

    /// The cycle rotated to start at its least element.
    pub fn canonical_cycle(&self) -> Vec<usize> {
        canonical_rotation(self.cycle())
    }
}

/// Iterates `u ↦ [u, h]` from `x`.
pub fn left_trajectory<G: Group>(g: &G, x: usize, h: usize) -> Trajectory {
    Trajectory::walk(x, |u| g.commutator(u, h))
}

/// Iterates `u ↦ [u, x]` from `h`.
pub fn right_trajectory<G: Group>(g: &G, h: usize, x: usize) -> Trajectory {
    Trajectory::walk(h, |u| g.commutator(u, x))
}

/// Iterates `u ↦ [u, φ] = u⁻¹ u^φ` from `x ∈ G`.
pub fn left_trajectory_aut(aut: &Automorphism<'_>, x: usize) -> Trajectory {
    Trajectory::walk(x, |u| aut.commutator(u))
}

/// Iterates `u ↦ [u, x]` in `G⟨φ⟩` from `φ`; indices are those of [`Semidirect`].
pub fn right_trajectory_aut(sd: &Semidirect<'_>, x: usize) -> Trajectory {
    Trajectory::walk(sd.phi(), |u| sd.commutator(u, x))
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct LimitCycle {
    pub elements: Vec<usize>,
    pub seeds: usize,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct EngelSink {
    pub owner: String,
    pub scope_order: usize,
    pub side: Side,
    /// Sorted, identity included.
    pub members: Vec<usize>,
    /// Nontrivial limit cycles, sorted.
    pub cycles: Vec<LimitCycle>,
    /// Seeds whose trajectory dies at the identity.
    pub trivial_seeds: usize,
}

impl EngelSink {
    pub fn len(&self) -> usize {
        self.members.len()
    }

    pub fn is_empty(&self) -> bool {
        self.members.is_empty()
    }

    /// Only the identity.
    pub fn is_trivial(&self) -> bool {
        self.members.len() == 1
    }

    pub fn contains(&self, x: usize) -> bool {
        self.members.binary_search(&x).is_ok()
    }

    pub fn is_subset_of(&self, other: &EngelSink) -> bool {
        self.members.iter().all(|&x| other.contains(x))
    }

    /// Cycle length → number of distinct limit cycles, the identity included.
    pub fn census(&self) -> BTreeMap<usize, usize> {
        let mut out = BTreeMap::new();
        if self.trivial_seeds > 0 {
            out.insert(1, 1);
        }
        for c in &self.cycles {
            *out.entry(c.elements.len()).or_insert(0) += 1;
        }
        out
    }

    fn assemble(owner: String, scope_order: usize, side: Side, cycles: CycleBook) -> Self {
        let CycleBook {
            mut cycles,
            trivial_seeds,
            ..
        } = cycles;
        let mut members = vec![0usize];
        for c in &cycles {
            members.extend_from_slice(&c.elements);
        }
        members.sort_unstable();
        members.dedup();
        cycles.sort_by(|a, b| a.elements.cmp(&b.elements));
        EngelSink {
            owner,
            scope_order,
            side,
            members,
            cycles,
            trivial_seeds,
        }
    }
}

#[derive(Default)]
struct CycleBook {
    cycles: Vec<LimitCycle>,
    index: HashMap<Vec<usize>, usize>,
    trivial_seeds: usize,
}

impl CycleBook {
    /// Registers `cycle` (already canonical); `None` is the identity cycle.
    fn intern(&mut self, cycle: Vec<usize>) -> Option<usize> {
        if cycle == [0] {
            return None;
        }
        if let Some(&id) = self.index.get(&cycle) {
            return Some(id);
        }
        let id = self.cycles.len();
        self.index.insert(cycle.clone(), id);
        self.cycles.push(LimitCycle {
            elements: cycle,
            seeds: 0,
        });
        Some(id)
    }

    fn bump(&mut self, id: Option<usize>) {
        match id {
            Some(id) => self.cycles[id].seeds += 1,
            None => self.trivial_seeds += 1,
        }
    }
}

fn canonical_rotation(cycle: &[usize]) -> Vec<usize> {
    let start = (0..cycle.len()).min_by_key(|&k| cycle[k]).unwrap_or(0);
    let mut out = cycle[start..].to_vec();
    out.extend_from_slice(&cycle[..start]);
    out
}

fn check_normalized<G: Group>(k: &Subgroup<'_, G>, h: usize, owner: &str) -> Result<()> {
    if k.is_normalized_by(&[h, k.parent().inv(h)]) {
        Ok(())
    } else {
        Err(Error::NotInvariant(owner.to_string()))
    }
}

/// Limit cycles of a self-map of `scope`, every point used as a seed.
fn functional_graph_cycles(
    n: usize,
    scope: &[usize],
    step: impl Fn(usize) -> usize,
) -> CycleBook {
    const UNKNOWN: u32 = u32::MAX;
    const TRIVIAL: u32 = u32::MAX - 1;
    let mut book = CycleBook::default();
    let mut fate = vec![UNKNOWN; n];
    let mut stamp = vec![UNKNOWN; n];
    let mut pos = vec![0u32; n];
    let mut path = Vec::new();
    for (seed_no, &x) in scope.iter().enumerate() {
        let mut u = x;
        path.clear();
        let id = loop {
            if fate[u] != UNKNOWN {
                break fate[u];
            }
            if stamp[u] == seed_no as u32 {
                let cycle = canonical_rotation(&path[pos[u] as usize..]);
                let id = match book.intern(cycle.clone()) {
                    Some(id) => id as u32,
                    None => TRIVIAL,
                };
                for &c in &cycle {
                    fate[c] = id;
                }
                break id;
            }
            stamp[u] = seed_no as u32;
            pos[u] = path.len() as u32;
            path.push(u);
            u = step(u);
        };
        for &p in &path {
            fate[p] = id;
        }
        book.bump(if id == TRIVIAL { None } else { Some(id as usize) });
    }
    book
}

/// Limit cycles of `u ↦ step(x, u)` from `start`, one walk per `x ∈ scope`.
fn seeded_walk_cycles(
    n: usize,
    scope: &[usize],
    start: usize,
    step: impl Fn(usize, usize) -> usize,
) -> CycleBook {
    let mut book = CycleBook::default();
    let mut stamp = vec![u32::MAX; n];
    let mut pos = vec![0u32; n];
    let mut path = Vec::new();
    for (seed_no, &x) in scope.iter().enumerate() {
        path.clear();
        let mut u = start;
        while stamp[u] != seed_no as u32 {
            stamp[u] = seed_no as u32;
            pos[u] = path.len() as u32;
            path.push(u);
            u = step(x, u);
        }
        let id = book.intern(canonical_rotation(&path[pos[u] as usize..]));
        book.bump(id);
    }
    book
}

/// `ℒ_K(h)`: requires `K` normalized by `h`.
pub fn left_sink<G: Group>(g: &G, h: usize, k: &Subgroup<'_, G>) -> Result<EngelSink> {
    let owner = g.label(h);
    check_normalized(k, h, &owner)?;
    let book = functional_graph_cycles(g.order(), k.members(), |u| g.commutator(u, h));
    Ok(EngelSink::assemble(owner, k.order(), Side::Left, book))
}

/// `ℛ_K(h)`: requires `K` normalized by `h`.
pub fn right_sink<G: Group>(g: &G, h: usize, k: &Subgroup<'_, G>) -> Result<EngelSink> {
    let owner = g.label(h);
    check_normalized(k, h, &owner)?;
    let book = seeded_walk_cycles(g.order(), k.members(), h, |x, u| g.commutator(u, x));
    Ok(EngelSink::assemble(owner, k.order(), Side::Right, book))
}

pub fn sink<G: Group>(g: &G, h: usize, k: &Subgroup<'_, G>, side: Side) -> Result<EngelSink> {
    match side {
        Side::Left => left_sink(g, h, k),
        Side::Right => right_sink(g, h, k),
    }
}

pub fn is_left_engel<G: Group>(g: &G, h: usize, k: &Subgroup<'_, G>) -> Result<bool> {
    Ok(left_sink(g, h, k)?.is_trivial())
}

pub fn is_right_engel<G: Group>(g: &G, h: usize, k: &Subgroup<'_, G>) -> Result<bool> {
    Ok(right_sink(g, h, k)?.is_trivial())
}

/// Sink of `φ` with seeds in `K` (`extended = false`) or `K⟨φ⟩` (`extended = true`),
/// for a φ-invariant `K ≤ G`. Members are indices of `G`.
pub fn aut_sink(
    aut: &Automorphism<'_>,
    k: &Subgroup<'_, FiniteGroup>,
    extended: bool,
    side: Side,
) -> Result<EngelSink> {
    let owner = aut.describe();
    if !aut.is_invariant(k) {
        return Err(Error::NotInvariant(owner.to_string()));
    }
    let sd = Semidirect::new(aut);
    let scope: Vec<usize> = if extended {
        sd.with_phi(k).members().to_vec()
    } else {
        k.members().to_vec()
    };
    let n = sd.order();
    let book = match side {
        Side::Left => functional_graph_cycles(n, &scope, |u| sd.commutator(u, sd.phi())),
        Side::Right => seeded_walk_cycles(n, &scope, sd.phi(), |x, u| sd.commutator(u, x)),
    };
    let sink = EngelSink::assemble(owner, scope.len(), side, book);
    debug_assert!(sink.members.iter().all(|&x| x < aut.group().order()));
    Ok(sink)
}

/// `ℒ(φ)` or `ℛ(φ)` with seeds over all of `G` or `G⟨φ⟩`.
pub fn aut_sink_in(aut: &Automorphism<'_>, scope: Scope, side: Side) -> Result<EngelSink> {
    aut_sink(aut, &aut.group().whole(), scope == Scope::Extension, side)
}

pub fn aut_left_sink(aut: &Automorphism<'_>, scope: Scope) -> Result<EngelSink> {
    aut_sink_in(aut, scope, Side::Left)
}

pub fn aut_right_sink(aut: &Automorphism<'_>, scope: Scope) -> Result<EngelSink> {
    aut_sink_in(aut, scope, Side::Right)
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct QuotientSink {
    /// Sink of `hN` in `K/N`, members numbered by coset.
    pub sink: EngelSink,
    /// Cosets of the members of the original sink.
    pub projected: Vec<usize>,
}

impl QuotientSink {
    pub fn agrees(&self) -> bool {
        self.sink.members == self.projected
    }
}

/// Recomputes the sink of `h` over `K` in `G/N` and projects the original sink.
pub fn sink_image_under_quotient<'a, G: Group>(
    g: &'a G,
    h: usize,
    k: &Subgroup<'a, G>,
    n: Subgroup<'a, G>,
    side: Side,
) -> Result<QuotientSink> {
    let original = sink(g, h, k, side)?;
    let q = QuotientGroup::new(g, n)?;
    let image: Vec<usize> = k.generators().iter().map(|&s| q.project(s)).collect();
    let k_bar = q.subgroup_generated(&image);
    let bar = sink(&q, q.project(h), &k_bar, side)?;
    let mut projected: Vec<usize> = original.members.iter().map(|&x| q.project(x)).collect();
    projected.sort_unstable();
    projected.dedup();
    Ok(QuotientSink {
        sink: bar,
        projected,
    })
}

/// The same comparison for an automorphism and a φ-invariant normal `N ≤ G`,
/// carried out in `G⟨φ⟩ / N`.
pub fn aut_sink_image_under_quotient(
    aut: &Automorphism<'_>,
    n: &Subgroup<'_, FiniteGroup>,
    scope: Scope,
    side: Side,
) -> Result<QuotientSink> {
    if !aut.is_invariant(n) || !n.is_normal() {
        return Err(Error::NotInvariant(aut.describe()));
    }
    let sd = Semidirect::new(aut);
    let k = match scope {
        Scope::Base => sd.base_subgroup(),
        Scope::Extension => sd.whole(),
    };
    sink_image_under_quotient(&sd, sd.phi(), &k, sd.lift(n), side)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::perm::Perm;

    fn perm(s: &str, n: usize) -> Perm {
        Perm::parse_cycles(s, n).unwrap()
    }

    fn group(degree: usize, gens: &[&str]) -> FiniteGroup {
        FiniteGroup::generate(degree, gens.iter().map(|s| perm(s, degree)).collect()).unwrap()
    }

    fn s3() -> FiniteGroup {
        group(3, &["(1 2)", "(1 2 3)"])
    }

    fn c7() -> FiniteGroup {
        group(7, &["(1 2 3 4 5 6 7)"])
    }

    fn inversion(g: &FiniteGroup) -> Automorphism<'_> {
        let images: Vec<Perm> = g.generator_perms().iter().map(|p| p.inverse()).collect();
        Automorphism::from_images(g, &images).unwrap()
    }

    fn idx(g: &FiniteGroup, s: &str) -> usize {
        g.index_of(&perm(s, g.degree())).unwrap()
    }

    // Unmemoized oracle: walk every seed to its cycle and union.
    fn oracle(trajectories: impl Iterator<Item = Trajectory>) -> Vec<usize> {
        let mut out = vec![0];
        for t in trajectories {
            out.extend_from_slice(t.cycle());
        }
        out.sort_unstable();
        out.dedup();
        out
    }

    #[test]
    fn trajectory_examples() {
        let g = s3();
        let t = left_trajectory(&g, 0, idx(&g, "(1 2)"));
        assert_eq!(t.cycle(), &[0]);
        assert_eq!(t.tail_start, 0);

        let c = c7();
        let inv = inversion(&c);
        let x = idx(&c, "(1 2 3 4 5 6 7)");
        let t = left_trajectory_aut(&inv, x);
        assert_eq!(t.tail_start, 0);
        assert_eq!(t.cycle().len(), 6);
        // [x, φ] = x⁻², so exponents follow k ↦ −2k mod 7.
        let gp = perm("(1 2 3 4 5 6 7)", 7);
        let pow = |k: usize| {
            let mut p = Perm::identity(7);
            for _ in 0..k {
                p = p.multiply(&gp).unwrap();
            }
            c.index_of(&p).unwrap()
        };
        let mut k = 1usize;
        for &u in t.steps.iter() {
            assert_eq!(u, pow(k));
            k = (7 * 2 - 2 * k % 7) % 7;
        }

        let t = left_trajectory(&g, idx(&g, "(1 3)"), idx(&g, "(1 2)"));
        let a3 = g.derived_subgroup();
        assert!(t.cycle().iter().all(|&u| a3.contains(u)));
        assert!(t.cycle().iter().all(|&u| u != 0));

        let t = right_trajectory(&g, idx(&g, "(1 2)"), 0);
        assert_eq!(t.steps[1..], [0]);
        assert_eq!(t.cycle(), &[0]);
    }

    #[test]
    fn right_trajectory_in_inner_extension() {
        let g = s3();
        let phi = Automorphism::inner(&g, &perm("(1 2)", 3)).unwrap();
        let sd = Semidirect::new(&phi);
        let a3 = g.derived_subgroup();
        // [φ, c] lies in ⟨c⟩, so the next step already dies.
        let t = right_trajectory_aut(&sd, idx(&g, "(1 2 3)"));
        assert_eq!(t.steps[1], idx(&g, "(1 3 2)"));
        assert_eq!(t.cycle(), &[0]);
        // A reflection seed settles on a nontrivial fixed point inside A_3.
        let t = right_trajectory_aut(&sd, idx(&g, "(1 3)"));
        assert_eq!(t.cycle().len(), 1);
        assert!(t.cycle()[0] != 0 && a3.contains(t.cycle()[0]));
        let id = Automorphism::identity(&g);
        let sd = Semidirect::new(&id);
        assert_eq!(right_trajectory_aut(&sd, 3).cycle(), &[0]);
    }

    #[test]
    fn left_sink_examples() {
        let d4 = group(4, &["(1 2 3 4)", "(1 3)"]);
        for h in 0..d4.order() {
            assert!(is_left_engel(&d4, h, &d4.whole()).unwrap());
        }
        let g = s3();
        let t = idx(&g, "(1 2)");
        let sink = left_sink(&g, t, &g.whole()).unwrap();
        assert_eq!(sink.members, vec![0, idx(&g, "(1 2 3)"), idx(&g, "(1 3 2)")]);
        assert!(!is_left_engel(&g, t, &g.whole()).unwrap());
        let c = c7();
        let inv = inversion(&c);
        assert_eq!(aut_left_sink(&inv, Scope::Base).unwrap().len(), 7);
    }

    #[test]
    fn right_sink_examples() {
        let g = s3();
        let id = Automorphism::identity(&g);
        assert!(aut_right_sink(&id, Scope::Extension).unwrap().is_trivial());
        let c = c7();
        let inv = inversion(&c);
        assert_eq!(aut_right_sink(&inv, Scope::Extension).unwrap().len(), 7);
        let a5 = group(5, &["(1 2 3 4 5)", "(1 2 3)"]);
        for h in 1..a5.order() {
            assert!(!right_sink(&a5, h, &a5.whole()).unwrap().is_trivial());
        }
    }

    #[test]
    fn abelian_elements_are_engel() {
        let c = group(6, &["(1 2 3 4 5 6)"]);
        for h in 0..6 {
            assert!(is_left_engel(&c, h, &c.whole()).unwrap());
            assert!(is_right_engel(&c, h, &c.whole()).unwrap());
        }
    }

    #[test]
    fn sinks_match_unmemoized_oracle() {
        let s4 = group(4, &["(1 2 3 4)", "(1 2)"]);
        for h in 0..s4.order() {
            let left = left_sink(&s4, h, &s4.whole()).unwrap();
            let expect = oracle((0..s4.order()).map(|x| left_trajectory(&s4, x, h)));
            assert_eq!(left.members, expect);
            let right = right_sink(&s4, h, &s4.whole()).unwrap();
            let expect = oracle((0..s4.order()).map(|x| right_trajectory(&s4, h, x)));
            assert_eq!(right.members, expect);
            let seeds: usize = left.cycles.iter().map(|c| c.seeds).sum::<usize>() + left.trivial_seeds;
            assert_eq!(seeds, 24);
        }
    }

    #[test]
    fn scope_must_be_invariant() {
        let g = s3();
        let t = idx(&g, "(1 2)");
        let k = g.subgroup_generated(&[idx(&g, "(1 3)")]);
        assert!(matches!(left_sink(&g, t, &k), Err(Error::NotInvariant(_))));
        let phi = Automorphism::inner(&g, &perm("(1 2)", 3)).unwrap();
        assert!(matches!(aut_sink(&phi, &k, false, Side::Left), Err(Error::NotInvariant(_))));
    }

    #[test]
    fn quotient_examples() {
        let g = s3();
        let t = idx(&g, "(1 2)");
        let q = sink_image_under_quotient(&g, t, &g.whole(), g.trivial(), Side::Left).unwrap();
        assert!(q.agrees());
        assert_eq!(q.sink.len(), 3);
        let q = sink_image_under_quotient(&g, t, &g.whole(), g.whole(), Side::Left).unwrap();
        assert_eq!(q.sink.members, vec![0]);
        let q = sink_image_under_quotient(&g, t, &g.whole(), g.derived_subgroup(), Side::Left).unwrap();
        assert_eq!(q.sink.members, vec![0]);
        assert!(q.agrees());
        let k = g.subgroup_generated(&[t]);
        assert_eq!(
            sink_image_under_quotient(&g, t, &g.whole(), k, Side::Left).unwrap_err(),
            Error::NotNormal
        );
    }

    #[test]
    fn inner_correspondence_on_s4() {
        let s4 = group(4, &["(1 2 3 4)", "(1 2)"]);
        for h in 0..s4.order() {
            let phi = Automorphism::inner_by_index(&s4, h);
            for side in [Side::Left, Side::Right] {
                let direct = sink(&s4, h, &s4.whole(), side).unwrap().members;
                for scope in [Scope::Base, Scope::Extension] {
                    assert_eq!(aut_sink_in(&phi, scope, side).unwrap().members, direct);
                }
            }
        }
    }

    #[test]
    fn census_counts_cycles_by_length() {
        let c = c7();
        let inv = inversion(&c);
        let s = aut_left_sink(&inv, Scope::Base).unwrap();
        assert_eq!(s.census(), BTreeMap::from([(1, 1), (6, 1)]));
        assert_eq!(s.cycles[0].seeds, 6);
        assert_eq!(s.trivial_seeds, 1);
    }
}
