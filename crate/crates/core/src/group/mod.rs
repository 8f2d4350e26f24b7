//! Finite groups with fully enumerated element sets.
//!
//! Every group is addressed through [`Group`], an index-based interface:
//! elements are `0..order()`, the identity is index 0 and arithmetic is
//! table-driven. [`FiniteGroup`] is the permutation-group implementation;
//! quotients and semidirect extensions implement the same trait so that
//! subgroup and sink algorithms are written once.

mod quotient;
pub(crate) mod subgroup;

use std::collections::HashMap;
use std::fmt;

pub use quotient::QuotientGroup;
pub use subgroup::Subgroup;

use crate::error::{Error, Result};
use crate::perm::Perm;

/// Largest group order that will be enumerated.
pub const ORDER_LIMIT: usize = 10_000;

/// Groups up to this order get a full Cayley table.
pub const TABLE_LIMIT: usize = 2_600;

/// Index-based finite group. Element 0 is the identity.
pub trait Group: Sized {
    fn order(&self) -> usize;
    fn mul(&self, a: usize, b: usize) -> usize;
    fn inv(&self, a: usize) -> usize;
    /// A generating set, without the identity.
    fn generators(&self) -> &[usize];
    /// Human-readable rendering of an element.
    fn label(&self, a: usize) -> String;

    #[inline]
    fn identity(&self) -> usize {
        0
    }

    /// `[a, b] = a⁻¹ b⁻¹ a b`.
    #[inline]
    fn commutator(&self, a: usize, b: usize) -> usize {
        let ab = self.mul(a, b);
        let ia_ib = self.mul(self.inv(a), self.inv(b));
        self.mul(ia_ib, ab)
    }

    /// `a^b = b⁻¹ a b`.
    #[inline]
    fn conjugate(&self, a: usize, b: usize) -> usize {
        self.mul(self.mul(self.inv(b), a), b)
    }

    fn pow(&self, a: usize, k: usize) -> usize {
        let mut result = self.identity();
        let mut base = a;
        let mut k = k;
        while k > 0 {
            if k & 1 == 1 {
                result = self.mul(result, base);
            }
            base = self.mul(base, base);
            k >>= 1;
        }
        result
    }

    fn element_order(&self, a: usize) -> usize {
        let mut x = a;
        let mut n = 1;
        while x != self.identity() {
            x = self.mul(x, a);
            n += 1;
        }
        n
    }

    fn whole(&self) -> Subgroup<'_, Self> {
        Subgroup::whole(self)
    }

    fn trivial(&self) -> Subgroup<'_, Self> {
        Subgroup::trivial(self)
    }

    /// Smallest subgroup containing `seeds`.
    fn subgroup_generated(&self, seeds: &[usize]) -> Subgroup<'_, Self> {
        Subgroup::generated(self, seeds)
    }

    /// Smallest normal subgroup containing `seeds`.
    fn normal_closure(&self, seeds: &[usize]) -> Subgroup<'_, Self> {
        let mut h = Subgroup::generated(self, seeds);
        h.close_under_conjugation(self.generators());
        h
    }

    fn center(&self) -> Subgroup<'_, Self> {
        self.centralizer(self.generators())
    }

    /// Elements commuting with every member of `set`.
    fn centralizer(&self, set: &[usize]) -> Subgroup<'_, Self> {
        let members = (0..self.order())
            .filter(|&x| set.iter().all(|&s| self.mul(x, s) == self.mul(s, x)))
            .collect();
        Subgroup::from_members(self, members)
    }

    fn normalizer(&self, h: &Subgroup<'_, Self>) -> Subgroup<'_, Self> {
        let members = (0..self.order())
            .filter(|&x| {
                h.generators()
                    .iter()
                    .all(|&s| h.contains(self.conjugate(s, x)))
            })
            .collect();
        Subgroup::from_members(self, members)
    }

    fn derived_subgroup(&self) -> Subgroup<'_, Self> {
        let g = self.whole();
        g.commutator_with(&g)
    }

    /// `γ_1 = G, γ_{k+1} = [γ_k, G]`, up to and including the first repeated term.
    fn lower_central_series(&self) -> Vec<Subgroup<'_, Self>> {
        let g = self.whole();
        let mut series = vec![g.clone()];
        loop {
            let next = series.last().unwrap().commutator_with(&g);
            if next.order() == series.last().unwrap().order() {
                return series;
            }
            series.push(next);
        }
    }

    fn nilpotent_residual(&self) -> Subgroup<'_, Self> {
        self.lower_central_series().pop().unwrap()
    }

    /// `G, G', G'', ...` until stabilization.
    fn derived_series(&self) -> Vec<Subgroup<'_, Self>> {
        let mut series = vec![self.whole()];
        loop {
            let last = series.last().unwrap();
            let next = last.commutator_with(last);
            if next.order() == last.order() {
                return series;
            }
            series.push(next);
        }
    }

    /// `Z_0 = 1 ≤ Z_1 ≤ ...`, where `Z_{i+1}/Z_i` is the center of `G/Z_i`.
    fn upper_central_series(&self) -> Vec<Subgroup<'_, Self>> {
        let mut series = vec![self.trivial()];
        loop {
            let last = series.last().unwrap();
            let q = QuotientGroup::new(self, last.clone()).expect("centre terms are normal");
            let zq = q.center();
            let members = (0..self.order())
                .filter(|&x| zq.contains(q.project(x)))
                .collect();
            let next = Subgroup::from_members(self, members);
            if next.order() == last.order() {
                return series;
            }
            series.push(next);
        }
    }

    fn hypercentre(&self) -> Subgroup<'_, Self> {
        self.upper_central_series().pop().unwrap()
    }

    fn is_abelian(&self) -> bool {
        let gens = self.generators();
        gens.iter()
            .all(|&a| gens.iter().all(|&b| self.mul(a, b) == self.mul(b, a)))
    }

    /// Nilpotency and class (number of nontrivial lower central factors).
    fn is_nilpotent(&self) -> (bool, usize) {
        let series = self.lower_central_series();
        let nilpotent = series.last().unwrap().is_trivial();
        (nilpotent, series.len() - 1)
    }

    fn is_metabelian(&self) -> bool {
        self.derived_subgroup().is_abelian()
    }

    fn is_soluble(&self) -> bool {
        self.derived_series().last().unwrap().is_trivial()
    }

    fn conjugacy_classes(&self) -> Vec<Vec<usize>> {
        let mut class_of = vec![usize::MAX; self.order()];
        let mut classes = Vec::new();
        for x in 0..self.order() {
            if class_of[x] != usize::MAX {
                continue;
            }
            let id = classes.len();
            let mut class = vec![x];
            class_of[x] = id;
            let mut k = 0;
            while k < class.len() {
                let y = class[k];
                for &t in self.generators() {
                    let z = self.conjugate(y, t);
                    if class_of[z] == usize::MAX {
                        class_of[z] = id;
                        class.push(z);
                    }
                }
                k += 1;
            }
            class.sort_unstable();
            classes.push(class);
        }
        classes
    }

    fn is_simple(&self) -> bool {
        self.order() > 1
            && self
                .conjugacy_classes()
                .iter()
                .filter(|c| c[0] != self.identity())
                .all(|c| self.normal_closure(&c[..1]).order() == self.order())
    }

    /// Every normal subgroup, sorted by (order, members).
    fn normal_subgroups(&self) -> Vec<Subgroup<'_, Self>> {
        let atoms: Vec<Subgroup<'_, Self>> = self
            .conjugacy_classes()
            .iter()
            .map(|c| self.normal_closure(&c[..1]))
            .collect();
        subgroup::join_closure(self, atoms)
    }

    fn exponent(&self) -> usize {
        (0..self.order()).fold(1, |acc, x| {
            let o = self.element_order(x);
            acc / gcd(acc, o) * o
        })
    }
}

pub(crate) fn gcd(mut a: usize, mut b: usize) -> usize {
    while b != 0 {
        (a, b) = (b, a % b);
    }
    a
}

/// A permutation group together with its canonically ordered element list.
pub struct FiniteGroup {
    name: String,
    degree: usize,
    generator_perms: Vec<Perm>,
    generators: Vec<usize>,
    elements: Vec<Perm>,
    index: HashMap<Perm, u32>,
    inverses: Vec<u32>,
    table: Option<Vec<u32>>,
}

impl FiniteGroup {
    /// Enumerates `⟨generators⟩` by breadth-first closure.
    pub fn generate(degree: usize, generators: Vec<Perm>) -> Result<Self> {
        if degree == 0 {
            return Err(Error::EmptyDomain);
        }
        for g in &generators {
            if g.degree() != degree {
                return Err(Error::DegreeMismatch {
                    left: degree,
                    right: g.degree(),
                });
            }
        }
        let mut gens: Vec<Perm> = generators.iter().filter(|g| !g.is_identity()).cloned().collect();
        gens.sort();
        gens.dedup();

        let identity = Perm::identity(degree);
        let mut seen: HashMap<Perm, ()> = HashMap::new();
        seen.insert(identity.clone(), ());
        let mut elements = vec![identity];
        let mut k = 0;
        while k < elements.len() {
            for s in &gens {
                let y = elements[k].mul_unchecked(s);
                if !seen.contains_key(&y) {
                    if elements.len() >= ORDER_LIMIT {
                        return Err(Error::TooLarge { limit: ORDER_LIMIT });
                    }
                    seen.insert(y.clone(), ());
                    elements.push(y);
                }
            }
            k += 1;
        }
        drop(seen);
        elements.sort();
        let index: HashMap<Perm, u32> = elements
            .iter()
            .enumerate()
            .map(|(i, p)| (p.clone(), i as u32))
            .collect();
        let inverses = elements.iter().map(|p| index[&p.inverse()]).collect();
        let gen_idx: Vec<usize> = gens.iter().map(|g| index[g] as usize).collect();

        let mut group = FiniteGroup {
            name: String::new(),
            degree,
            generator_perms: generators,
            generators: gen_idx,
            elements,
            index,
            inverses,
            table: None,
        };
        if group.order() <= TABLE_LIMIT {
            group.table = Some(group.build_table());
        }
        Ok(group)
    }

    fn build_table(&self) -> Vec<u32> {
        let n = self.order();
        let right: Vec<Vec<u32>> = self
            .generators
            .iter()
            .map(|&s| {
                self.elements
                    .iter()
                    .map(|e| self.index[&e.mul_unchecked(&self.elements[s])])
                    .collect()
            })
            .collect();
        // Spanning tree: every y != 1 is parent[y] * generators[via[y]].
        let mut parent = vec![u32::MAX; n];
        let mut via = vec![0usize; n];
        let mut order = vec![0u32];
        parent[0] = 0;
        let mut k = 0;
        while k < order.len() {
            let y = order[k] as usize;
            for (g, row) in right.iter().enumerate() {
                let z = row[y] as usize;
                if parent[z] == u32::MAX {
                    parent[z] = y as u32;
                    via[z] = g;
                    order.push(z as u32);
                }
            }
            k += 1;
        }
        let mut table = vec![0u32; n * n];
        for x in 0..n {
            let row = &mut table[x * n..(x + 1) * n];
            row[0] = x as u32;
            for &y in &order[1..] {
                let y = y as usize;
                row[y] = right[via[y]][row[parent[y] as usize] as usize];
            }
        }
        table
    }

    pub fn with_name(mut self, name: impl Into<String>) -> Self {
        self.name = name.into();
        self
    }

    pub fn name(&self) -> &str {
        &self.name
    }

    pub fn degree(&self) -> usize {
        self.degree
    }

    /// Generators exactly as supplied at construction.
    pub fn generator_perms(&self) -> &[Perm] {
        &self.generator_perms
    }

    pub fn elements(&self) -> &[Perm] {
        &self.elements
    }

    pub fn element(&self, i: usize) -> &Perm {
        &self.elements[i]
    }

    pub fn index_of(&self, p: &Perm) -> Option<usize> {
        self.index.get(p).map(|&i| i as usize)
    }

    /// Index of `p`, or [`Error::NotInGroup`].
    pub fn require(&self, p: &Perm) -> Result<usize> {
        self.index_of(p)
            .ok_or_else(|| Error::NotInGroup(p.to_string()))
    }

    pub fn has_table(&self) -> bool {
        self.table.is_some()
    }

    /// Permutation group on the disjoint union of both domains.
    pub fn direct_product(&self, other: &FiniteGroup) -> Result<FiniteGroup> {
        let degree = self.degree + other.degree;
        let mut gens: Vec<Perm> = self
            .generators
            .iter()
            .map(|&g| self.elements[g].shifted(0, degree))
            .collect();
        gens.extend(
            other
                .generators
                .iter()
                .map(|&g| other.elements[g].shifted(self.degree, degree)),
        );
        Ok(FiniteGroup::generate(degree, gens)?.with_name(format!("{}x{}", self.name, other.name)))
    }
}

impl Group for FiniteGroup {
    #[inline]
    fn order(&self) -> usize {
        self.elements.len()
    }

    #[inline]
    fn mul(&self, a: usize, b: usize) -> usize {
        match &self.table {
            Some(t) => t[a * self.elements.len() + b] as usize,
            None => self.index[&self.elements[a].mul_unchecked(&self.elements[b])] as usize,
        }
    }

    #[inline]
    fn inv(&self, a: usize) -> usize {
        self.inverses[a] as usize
    }

    fn generators(&self) -> &[usize] {
        &self.generators
    }

    fn label(&self, a: usize) -> String {
        self.elements[a].to_string()
    }
}

impl fmt::Debug for FiniteGroup {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_struct("FiniteGroup")
            .field("name", &self.name)
            .field("degree", &self.degree)
            .field("order", &self.order())
            .finish()
    }
}
