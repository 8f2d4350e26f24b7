//! Sylow subgroups, p-cores, the Fitting subgroup and the TI property.

use crate::group::{Group, Subgroup};
use crate::numtheory;

#[derive(Clone, Debug)]
pub struct SylowRecord<'a, G: Group> {
    pub prime: usize,
    pub subgroup: Subgroup<'a, G>,
    pub is_cyclic: bool,
}

impl<'a, G: Group> SylowRecord<'a, G> {
    pub fn is_ti(&self) -> bool {
        is_ti(&self.subgroup)
    }

    pub fn conjugates(&self) -> Vec<Subgroup<'a, G>> {
        all_sylow_conjugates(&self.subgroup, self.prime)
    }
}

fn is_p_power(mut n: usize, p: usize) -> bool {
    while n.is_multiple_of(p) {
        n /= p;
    }
    n == 1
}

/// A Sylow `p`-subgroup by normalizer ascent. The first `p`-element of
/// `N(P) \ P` in canonical order extends `P` at each step.
pub fn sylow<G: Group>(g: &G, p: usize) -> SylowRecord<'_, G> {
    let (target, _) = numtheory::p_part(g.order() as u128, p as u128);
    let target = target as usize;
    let mut sub = g.trivial();
    while sub.order() < target {
        let n = g.normalizer(&sub);
        let x = n
            .members()
            .iter()
            .copied()
            .find(|&x| !sub.contains(x) && is_p_power(g.element_order(x), p))
            .expect("a p-element outside P normalizes P while P is not Sylow");
        sub.extend(x);
        debug_assert!(is_p_power(sub.order(), p));
    }
    let is_cyclic = sub
        .members()
        .iter()
        .any(|&x| g.element_order(x) == sub.order());
    SylowRecord {
        prime: p,
        subgroup: sub,
        is_cyclic,
    }
}

/// Sylow subgroups for every prime dividing `|G|`, ascending by prime.
pub fn sylow_subgroups<G: Group>(g: &G) -> Vec<SylowRecord<'_, G>> {
    numtheory::factorize(g.order() as u128)
        .into_iter()
        .map(|(p, _)| sylow(g, p as usize))
        .collect()
}

/// `S ∩ S^g ∈ {1, S}` for every `g`.
pub fn is_ti<G: Group>(s: &Subgroup<'_, G>) -> bool {
    let g = s.parent();
    (0..g.order()).all(|x| {
        let c = s.conjugate_by(x);
        let meet = s.members().iter().filter(|&&m| c.contains(m)).count();
        meet == 1 || meet == s.order()
    })
}

/// The conjugation orbit of `S`, sorted by member set. The count is
/// asserted to be ≡ 1 mod `p` and to divide `|G : S|`.
pub fn all_sylow_conjugates<'a, G: Group>(s: &Subgroup<'a, G>, p: usize) -> Vec<Subgroup<'a, G>> {
    let g = s.parent();
    let mut orbit = vec![s.clone()];
    let mut k = 0;
    while k < orbit.len() {
        for &t in g.generators() {
            let c = orbit[k].conjugate_by(t);
            if !orbit.iter().any(|o| o.members() == c.members()) {
                orbit.push(c);
            }
        }
        k += 1;
    }
    orbit.sort_by(|a, b| a.members().cmp(b.members()));
    assert_eq!(orbit.len() % p, 1 % p, "Sylow count must be 1 mod p");
    assert_eq!(s.index() % orbit.len(), 0, "Sylow count must divide the index");
    orbit
}

/// `O_p(G)`, the intersection of all Sylow `p`-subgroups.
pub fn p_core<G: Group>(g: &G, p: usize) -> Subgroup<'_, G> {
    let s = sylow(g, p);
    let mut core = s.subgroup.clone();
    for c in all_sylow_conjugates(&s.subgroup, p) {
        core = core.intersection(&c);
    }
    core
}

/// `F(G)`, the product of the `p`-cores.
pub fn fitting_subgroup<G: Group>(g: &G) -> Subgroup<'_, G> {
    let mut f = g.trivial();
    for (p, _) in numtheory::factorize(g.order() as u128) {
        f = f.join(&p_core(g, p as usize));
    }
    debug_assert!(f.is_normal());
    f
}
