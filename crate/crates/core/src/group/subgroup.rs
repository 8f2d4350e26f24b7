use std::collections::HashSet;
use std::fmt;

use super::Group;

/// A subgroup of `parent`, stored as a sorted index set plus a membership mask.
pub struct Subgroup<'a, G: Group> {
    parent: &'a G,
    members: Vec<usize>,
    mask: Vec<bool>,
    gens: Vec<usize>,
}

impl<G: Group> Clone for Subgroup<'_, G> {
    fn clone(&self) -> Self {
        Subgroup {
            parent: self.parent,
            members: self.members.clone(),
            mask: self.mask.clone(),
            gens: self.gens.clone(),
        }
    }
}

impl<G: Group> PartialEq for Subgroup<'_, G> {
    fn eq(&self, other: &Self) -> bool {
        std::ptr::eq(self.parent, other.parent) && self.members == other.members
    }
}

impl<G: Group> Eq for Subgroup<'_, G> {}

impl<G: Group> fmt::Debug for Subgroup<'_, G> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_struct("Subgroup")
            .field("order", &self.members.len())
            .field("members", &self.members)
            .finish()
    }
}

impl<'a, G: Group> Subgroup<'a, G> {
    pub fn trivial(parent: &'a G) -> Self {
        let mut mask = vec![false; parent.order()];
        mask[parent.identity()] = true;
        Subgroup {
            parent,
            members: vec![parent.identity()],
            mask,
            gens: Vec::new(),
        }
    }

    pub fn whole(parent: &'a G) -> Self {
        Subgroup {
            parent,
            members: (0..parent.order()).collect(),
            mask: vec![true; parent.order()],
            gens: parent.generators().to_vec(),
        }
    }

    pub fn generated(parent: &'a G, seeds: &[usize]) -> Self {
        let mut h = Subgroup::trivial(parent);
        for &s in seeds {
            h.extend(s);
        }
        h
    }

    /// Wraps a member set already known to be closed; generators are chosen greedily.
    pub fn from_members(parent: &'a G, mut members: Vec<usize>) -> Self {
        members.sort_unstable();
        members.dedup();
        let mut h = Subgroup::trivial(parent);
        for &m in &members {
            if !h.contains(m) {
                h.extend(m);
            }
        }
        debug_assert_eq!(h.members, members, "member set is not a subgroup");
        h
    }

    /// Replaces `self` by `⟨self, x⟩`.
    pub fn extend(&mut self, x: usize) {
        if self.mask[x] {
            return;
        }
        self.gens.push(x);
        let g = self.parent;
        // Every old member times the new generator, then close under all generators.
        let mut queue: Vec<usize> = self.members.clone();
        let mut k = 0;
        while k < queue.len() {
            let y = queue[k];
            for &s in &self.gens {
                let z = g.mul(y, s);
                if !self.mask[z] {
                    self.mask[z] = true;
                    self.members.push(z);
                    queue.push(z);
                }
            }
            k += 1;
        }
        self.members.sort_unstable();
    }

    /// Smallest overgroup closed under conjugation by each of `conjugators`.
    pub fn close_under_conjugation(&mut self, conjugators: &[usize]) {
        let g = self.parent;
        let mut k = 0;
        while k < self.gens.len() {
            let s = self.gens[k];
            for &t in conjugators {
                let c = g.conjugate(s, t);
                if !self.mask[c] {
                    self.extend(c);
                }
            }
            k += 1;
        }
    }

    pub fn parent(&self) -> &'a G {
        self.parent
    }

    pub fn order(&self) -> usize {
        self.members.len()
    }

    pub fn members(&self) -> &[usize] {
        &self.members
    }

    pub fn generators(&self) -> &[usize] {
        &self.gens
    }

    #[inline]
    pub fn contains(&self, x: usize) -> bool {
        self.mask[x]
    }

    pub fn mask(&self) -> &[bool] {
        &self.mask
    }

    pub fn is_trivial(&self) -> bool {
        self.members.len() == 1
    }

    pub fn is_whole(&self) -> bool {
        self.members.len() == self.parent.order()
    }

    pub fn index(&self) -> usize {
        self.parent.order() / self.members.len()
    }

    pub fn is_subset_of(&self, other: &Subgroup<'_, G>) -> bool {
        self.members.iter().all(|&x| other.contains(x))
    }

    pub fn intersection(&self, other: &Subgroup<'a, G>) -> Subgroup<'a, G> {
        let members = self
            .members
            .iter()
            .copied()
            .filter(|&x| other.contains(x))
            .collect();
        Subgroup::from_members(self.parent, members)
    }

    pub fn join(&self, other: &Subgroup<'a, G>) -> Subgroup<'a, G> {
        let mut h = self.clone();
        for &s in &other.gens {
            h.extend(s);
        }
        h
    }

    pub fn is_abelian(&self) -> bool {
        let g = self.parent;
        self.gens
            .iter()
            .all(|&a| self.gens.iter().all(|&b| g.mul(a, b) == g.mul(b, a)))
    }

    /// Normal in the parent group.
    pub fn is_normal(&self) -> bool {
        self.is_normalized_by(self.parent.generators())
    }

    pub fn is_normalized_by(&self, elements: &[usize]) -> bool {
        let g = self.parent;
        self.gens
            .iter()
            .all(|&s| elements.iter().all(|&t| self.contains(g.conjugate(s, t))))
    }

    /// `H^x = x⁻¹ H x`.
    pub fn conjugate_by(&self, x: usize) -> Subgroup<'a, G> {
        let g = self.parent;
        let members: Vec<usize> = self.members.iter().map(|&m| g.conjugate(m, x)).collect();
        let mut mask = vec![false; g.order()];
        for &m in &members {
            mask[m] = true;
        }
        let gens = self.gens.iter().map(|&s| g.conjugate(s, x)).collect();
        let mut members = members;
        members.sort_unstable();
        Subgroup {
            parent: g,
            members,
            mask,
            gens,
        }
    }

    /// Image under an index map that is known to be an automorphism of the parent.
    pub fn map_by(&self, f: impl Fn(usize) -> usize) -> Subgroup<'a, G> {
        let g = self.parent;
        let mut members: Vec<usize> = self.members.iter().map(|&m| f(m)).collect();
        let mut mask = vec![false; g.order()];
        for &m in &members {
            mask[m] = true;
        }
        members.sort_unstable();
        let gens = self.gens.iter().map(|&s| f(s)).collect();
        Subgroup {
            parent: g,
            members,
            mask,
            gens,
        }
    }

    /// `[self, other]`: normal closure in `⟨self, other⟩` of commutators of generators.
    pub fn commutator_with(&self, other: &Subgroup<'a, G>) -> Subgroup<'a, G> {
        let g = self.parent;
        let mut seeds = Vec::new();
        for &a in &self.gens {
            for &b in &other.gens {
                seeds.push(g.commutator(a, b));
            }
        }
        let mut h = Subgroup::generated(g, &seeds);
        let mut conjugators = self.gens.clone();
        conjugators.extend_from_slice(&other.gens);
        h.close_under_conjugation(&conjugators);
        h
    }

    /// Member labels, in canonical order.
    pub fn labels(&self) -> Vec<String> {
        self.members.iter().map(|&m| self.parent.label(m)).collect()
    }
}

/// Closes a family of normal subgroups under pairwise joins.
pub(crate) fn join_closure<'a, G: Group>(
    parent: &'a G,
    atoms: Vec<Subgroup<'a, G>>,
) -> Vec<Subgroup<'a, G>> {
    let mut seen: HashSet<Vec<usize>> = HashSet::new();
    let mut all: Vec<Subgroup<'a, G>> = Vec::new();
    let mut push = |h: Subgroup<'a, G>, all: &mut Vec<Subgroup<'a, G>>| {
        if seen.insert(h.members.clone()) {
            all.push(h);
            true
        } else {
            false
        }
    };
    push(Subgroup::trivial(parent), &mut all);
    let mut distinct_atoms = Vec::new();
    for a in atoms {
        if push(a.clone(), &mut all) {
            distinct_atoms.push(a);
        }
    }
    let mut k = 0;
    while k < all.len() {
        for a in &distinct_atoms {
            if a.is_subset_of(&all[k]) {
                continue;
            }
            let j = all[k].join(a);
            push(j, &mut all);
        }
        k += 1;
    }
    all.sort_by(|a, b| a.order().cmp(&b.order()).then_with(|| a.members.cmp(&b.members)));
    all
}
