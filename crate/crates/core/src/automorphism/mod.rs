//! Automorphisms of enumerated permutation groups.
//!
//! An [`Automorphism`] stores its full image table over element indices.
//! Automorphisms act on the right: `x^φ` is written `φ.apply(x)` and the
//! commutator with an element is `[x, φ] = x⁻¹ x^φ`.

mod enumerate;
mod extension;

use std::fmt;

pub use enumerate::{enumerate_automorphisms, small_generating_set, AUTOMORPHISM_SEARCH_LIMIT};
pub use extension::{ExtensionGroup, Semidirect};

use crate::error::{Error, Result};
use crate::group::{FiniteGroup, Group, Subgroup};
use crate::numtheory;
use crate::perm::Perm;

#[derive(Clone)]
pub struct Automorphism<'g> {
    group: &'g FiniteGroup,
    table: Vec<u32>,
    order: usize,
}

impl PartialEq for Automorphism<'_> {
    fn eq(&self, other: &Self) -> bool {
        std::ptr::eq(self.group, other.group) && self.table == other.table
    }
}

impl Eq for Automorphism<'_> {}

impl fmt::Debug for Automorphism<'_> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_struct("Automorphism")
            .field("group", &self.group.name())
            .field("order", &self.order)
            .finish()
    }
}

impl<'g> Automorphism<'g> {
    pub fn identity(group: &'g FiniteGroup) -> Self {
        Automorphism {
            group,
            table: (0..group.order() as u32).collect(),
            order: 1,
        }
    }

    /// Builds the automorphism sending `group.generator_perms()[i]` to `images[i]`.
    pub fn from_images(group: &'g FiniteGroup, images: &[Perm]) -> Result<Self> {
        let supplied = group.generator_perms();
        if images.len() != supplied.len() {
            return Err(Error::Parse(format!(
                "expected {} generator images, got {}",
                supplied.len(),
                images.len()
            )));
        }
        let mut gen_images = vec![usize::MAX; group.order()];
        for (g, img) in supplied.iter().zip(images) {
            let gi = group.require(g)?;
            let ii = group.require(img)?;
            if gen_images[gi] != usize::MAX && gen_images[gi] != ii {
                return Err(Error::NotHomomorphism);
            }
            gen_images[gi] = ii;
        }
        if gen_images[0] != usize::MAX && gen_images[0] != 0 {
            return Err(Error::NotHomomorphism);
        }
        let images: Vec<usize> = group.generators().iter().map(|&s| gen_images[s]).collect();
        Self::from_generator_indices(group, &images)
    }

    /// `images[k]` is the image of `group.generators()[k]`.
    pub fn from_generator_indices(group: &'g FiniteGroup, images: &[usize]) -> Result<Self> {
        let table = extend_to_table(group, group.generators(), images).ok_or(Error::NotHomomorphism)?;
        let mut hit = vec![false; group.order()];
        for &t in &table {
            if hit[t as usize] {
                return Err(Error::NotBijective);
            }
            hit[t as usize] = true;
        }
        Ok(Self::from_table_unchecked(group, table))
    }

    pub(crate) fn from_table_unchecked(group: &'g FiniteGroup, table: Vec<u32>) -> Self {
        let order = table_order(&table);
        Automorphism {
            group,
            table,
            order,
        }
    }

    /// Conjugation `x ↦ g⁻¹ x g`.
    pub fn inner(group: &'g FiniteGroup, g: &Perm) -> Result<Self> {
        let gi = group.require(g)?;
        Ok(Self::inner_by_index(group, gi))
    }

    pub fn inner_by_index(group: &'g FiniteGroup, g: usize) -> Self {
        let table = (0..group.order())
            .map(|x| group.conjugate(x, g) as u32)
            .collect();
        Self::from_table_unchecked(group, table)
    }

    pub fn group(&self) -> &'g FiniteGroup {
        self.group
    }

    pub fn table(&self) -> &[u32] {
        &self.table
    }

    #[inline]
    pub fn apply(&self, x: usize) -> usize {
        self.table[x] as usize
    }

    pub fn apply_perm(&self, x: &Perm) -> Result<Perm> {
        let i = self.group.require(x)?;
        Ok(self.group.element(self.apply(i)).clone())
    }

    pub fn order(&self) -> usize {
        self.order
    }

    pub fn is_identity(&self) -> bool {
        self.order == 1
    }

    /// `self` followed by `other`.
    pub fn then(&self, other: &Automorphism<'g>) -> Automorphism<'g> {
        let table = self.table.iter().map(|&x| other.table[x as usize]).collect();
        Self::from_table_unchecked(self.group, table)
    }

    pub fn inverse(&self) -> Automorphism<'g> {
        let mut table = vec![0u32; self.table.len()];
        for (x, &y) in self.table.iter().enumerate() {
            table[y as usize] = x as u32;
        }
        Automorphism {
            group: self.group,
            table,
            order: self.order,
        }
    }

    /// `φ^k`, with `k` reduced modulo the order.
    pub fn power(&self, k: usize) -> Automorphism<'g> {
        let k = k % self.order;
        let mut table: Vec<u32> = (0..self.table.len() as u32).collect();
        for _ in 0..k {
            for t in table.iter_mut() {
                *t = self.table[*t as usize];
            }
        }
        Automorphism {
            group: self.group,
            table,
            order: self.order / gcd(self.order, k),
        }
    }

    /// `C_G(φ)`.
    pub fn fixed_subgroup(&self) -> Subgroup<'g, FiniteGroup> {
        let members = (0..self.group.order())
            .filter(|&x| self.apply(x) == x)
            .collect();
        Subgroup::from_members(self.group, members)
    }

    /// `[x, φ] = x⁻¹ x^φ`.
    #[inline]
    pub fn commutator(&self, x: usize) -> usize {
        self.group.mul(self.group.inv(x), self.apply(x))
    }

    /// `[G, φ] = ⟨x⁻¹ x^φ⟩`; always normal in `G`.
    pub fn commutator_subgroup(&self) -> Subgroup<'g, FiniteGroup> {
        self.commutator_subgroup_of(&self.group.whole())
    }

    /// `[K, φ]` for a φ-invariant subgroup `K`.
    pub fn commutator_subgroup_of(&self, k: &Subgroup<'g, FiniteGroup>) -> Subgroup<'g, FiniteGroup> {
        let seeds: Vec<usize> = k.members().iter().map(|&x| self.commutator(x)).collect();
        let h = self.group.subgroup_generated(&seeds);
        debug_assert!(!k.is_whole() || h.is_normal());
        h
    }

    pub fn is_invariant(&self, h: &Subgroup<'_, FiniteGroup>) -> bool {
        h.generators().iter().all(|&s| h.contains(self.apply(s)))
    }

    /// Image of a φ-invariant subgroup, as a subgroup.
    pub fn image_of(&self, h: &Subgroup<'g, FiniteGroup>) -> Subgroup<'g, FiniteGroup> {
        h.map_by(|x| self.apply(x))
    }

    /// Splits `φ` into commuting parts of `p`-power and `p'` order with `φ_p φ_p' = φ`.
    pub fn coprime_parts(&self, p: u128) -> Result<(Automorphism<'g>, Automorphism<'g>)> {
        if !numtheory::is_prime(p) {
            return Err(Error::NotPrime(p));
        }
        let n = self.order as u128;
        let (np, rest) = numtheory::p_part(n, p);
        let to_p = rest * numtheory::mod_inverse(rest % np, np) % n;
        let to_rest = np * numtheory::mod_inverse(np % rest, rest) % n;
        Ok((self.power(to_p as usize), self.power(to_rest as usize)))
    }

    /// The least `g` with `φ = inner(g)`, if any.
    pub fn inner_witness(&self) -> Option<usize> {
        let g = self.group;
        (0..g.order()).find(|&c| {
            g.generators()
                .iter()
                .all(|&s| g.conjugate(s, c) == self.apply(s))
        })
    }

    /// Normal subgroups of `G` that are mapped onto themselves.
    pub fn invariant_normal_subgroups(&self) -> Vec<Subgroup<'g, FiniteGroup>> {
        let g = self.group;
        let mut seen = std::collections::HashSet::new();
        let mut atoms = Vec::new();
        for x in 1..g.order() {
            let mut orbit = vec![x];
            let mut y = self.apply(x);
            while y != x {
                orbit.push(y);
                y = self.apply(y);
            }
            let n = g.normal_closure(&orbit);
            if seen.insert(n.members().to_vec()) {
                atoms.push(n);
            }
        }
        crate::group::subgroup::join_closure(g, atoms)
    }

    /// Minimal nontrivial normal φ-invariant subgroups.
    pub fn minimal_invariant_normal_subgroups(&self) -> Vec<Subgroup<'g, FiniteGroup>> {
        let all = self.invariant_normal_subgroups();
        let nontrivial: Vec<_> = all.iter().filter(|n| !n.is_trivial()).collect();
        nontrivial
            .iter()
            .filter(|n| {
                !nontrivial
                    .iter()
                    .any(|m| m.order() < n.order() && m.is_subset_of(n))
            })
            .map(|n| (*n).clone())
            .collect()
    }

    /// The semidirect product `G⟨φ⟩` as a permutation group.
    pub fn extension(&self) -> Result<ExtensionGroup<'g>> {
        ExtensionGroup::new(self.clone())
    }

    /// Images of the generators, for display and serialization.
    pub fn generator_images(&self) -> Vec<&Perm> {
        self.group
            .generator_perms()
            .iter()
            .map(|g| self.group.element(self.apply(self.group.index_of(g).unwrap())))
            .collect()
    }

    /// `inner(g)` for the least inducing `g`, otherwise the generator images.
    pub fn describe(&self) -> String {
        match self.inner_witness() {
            Some(c) => format!("inner({})", self.group.element(c)),
            None => {
                let parts: Vec<String> = self
                    .group
                    .generators()
                    .iter()
                    .map(|&s| format!("{}->{}", self.group.element(s), self.group.element(self.apply(s))))
                    .collect();
                format!("aut[{}]", parts.join(","))
            }
        }
    }
}

/// Extends generator images multiplicatively along a spanning tree and checks
/// `f(x s) = f(x) f(s)` for every element `x` and generator `s`, which
/// together imply `f(ab) = f(a) f(b)` for all `a, b`.
pub(crate) fn extend_to_table(group: &FiniteGroup, gens: &[usize], images: &[usize]) -> Option<Vec<u32>> {
    let n = group.order();
    let mut table = vec![u32::MAX; n];
    table[0] = 0;
    let mut queue = vec![0usize];
    let mut k = 0;
    while k < queue.len() {
        let y = queue[k];
        for (&s, &t) in gens.iter().zip(images) {
            let z = group.mul(y, s);
            let fz = group.mul(table[y] as usize, t) as u32;
            if table[z] == u32::MAX {
                table[z] = fz;
                queue.push(z);
            } else if table[z] != fz {
                return None;
            }
        }
        k += 1;
    }
    if queue.len() != n {
        return None;
    }
    Some(table)
}

fn table_order(table: &[u32]) -> usize {
    // Order of a permutation of indices: lcm of its cycle lengths.
    let mut seen = vec![false; table.len()];
    let mut order = 1usize;
    for start in 0..table.len() {
        if seen[start] {
            continue;
        }
        let mut len = 0;
        let mut x = start;
        while !seen[x] {
            seen[x] = true;
            x = table[x] as usize;
            len += 1;
        }
        order = order / gcd(order, len) * len;
    }
    order
}

fn gcd(a: usize, b: usize) -> usize {
    crate::group::gcd(a, b)
}
