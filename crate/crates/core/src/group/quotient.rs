use super::{Group, Subgroup};
use crate::error::{Error, Result};

const QUOTIENT_TABLE_LIMIT: usize = 1_024;

/// `parent / kernel`, cosets numbered by their least member.
pub struct QuotientGroup<'a, G: Group> {
    parent: &'a G,
    kernel: Subgroup<'a, G>,
    reps: Vec<usize>,
    coset_of: Vec<u32>,
    table: Option<Vec<u32>>,
    gens: Vec<usize>,
}

impl<'a, G: Group> QuotientGroup<'a, G> {
    pub fn new(parent: &'a G, kernel: Subgroup<'a, G>) -> Result<Self> {
        if !kernel.is_normal() {
            return Err(Error::NotNormal);
        }
        let mut coset_of = vec![u32::MAX; parent.order()];
        let mut reps = Vec::with_capacity(kernel.index());
        for x in 0..parent.order() {
            if coset_of[x] != u32::MAX {
                continue;
            }
            let c = reps.len() as u32;
            reps.push(x);
            for &k in kernel.members() {
                coset_of[parent.mul(x, k)] = c;
            }
        }
        let mut gens: Vec<usize> = parent
            .generators()
            .iter()
            .map(|&g| coset_of[g] as usize)
            .filter(|&c| c != 0)
            .collect();
        gens.sort_unstable();
        gens.dedup();
        let mut q = QuotientGroup {
            parent,
            kernel,
            reps,
            coset_of,
            table: None,
            gens,
        };
        let n = q.reps.len();
        if n <= QUOTIENT_TABLE_LIMIT {
            let mut table = vec![0u32; n * n];
            for a in 0..n {
                for b in 0..n {
                    table[a * n + b] = q.coset_of[parent.mul(q.reps[a], q.reps[b])];
                }
            }
            q.table = Some(table);
        }
        debug_assert!(q.spot_check_table());
        Ok(q)
    }

    /// Identity, inverses and associativity on a deterministic sample of triples.
    pub fn spot_check_table(&self) -> bool {
        let n = self.order();
        let identity_ok = (0..n).all(|a| self.mul(0, a) == a && self.mul(a, 0) == a);
        let inverse_ok = (0..n).all(|a| self.mul(a, self.inv(a)) == 0);
        let step = (n / 7).max(1);
        let assoc_ok = (0..n).step_by(step).all(|a| {
            (0..n).step_by(step).all(|b| {
                (0..n).step_by(step).all(|c| {
                    self.mul(self.mul(a, b), c) == self.mul(a, self.mul(b, c))
                })
            })
        });
        identity_ok && inverse_ok && assoc_ok
    }

    pub fn parent(&self) -> &'a G {
        self.parent
    }

    pub fn kernel(&self) -> &Subgroup<'a, G> {
        &self.kernel
    }

    /// Coset containing parent element `x`.
    #[inline]
    pub fn project(&self, x: usize) -> usize {
        self.coset_of[x] as usize
    }

    /// Least parent element of coset `c`.
    pub fn representative(&self, c: usize) -> usize {
        self.reps[c]
    }

    pub fn representatives(&self) -> &[usize] {
        &self.reps
    }
}

impl<G: Group> Group for QuotientGroup<'_, G> {
    fn order(&self) -> usize {
        self.reps.len()
    }

    #[inline]
    fn mul(&self, a: usize, b: usize) -> usize {
        match &self.table {
            Some(t) => t[a * self.reps.len() + b] as usize,
            None => self.coset_of[self.parent.mul(self.reps[a], self.reps[b])] as usize,
        }
    }

    #[inline]
    fn inv(&self, a: usize) -> usize {
        self.coset_of[self.parent.inv(self.reps[a])] as usize
    }

    fn generators(&self) -> &[usize] {
        &self.gens
    }

    fn label(&self, a: usize) -> String {
        format!("{}N", self.parent.label(self.reps[a]))
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::group::FiniteGroup;
    use crate::perm::Perm;

    fn s3() -> FiniteGroup {
        FiniteGroup::generate(
            3,
            vec![
                Perm::parse_cycles("(1 2)", 3).unwrap(),
                Perm::parse_cycles("(1 2 3)", 3).unwrap(),
            ],
        )
        .unwrap()
    }

    #[test]
    fn quotient_examples() {
        let g = s3();
        let q = QuotientGroup::new(&g, g.whole()).unwrap();
        assert_eq!(q.order(), 1);
        let q = QuotientGroup::new(&g, g.trivial()).unwrap();
        assert_eq!(q.order(), 6);
        for a in 0..6 {
            for b in 0..6 {
                assert_eq!(q.mul(a, b), g.mul(a, b));
            }
        }
        let a3 = g.derived_subgroup();
        let q = QuotientGroup::new(&g, a3.clone()).unwrap();
        assert_eq!(q.order(), 2);
        assert_eq!(q.order() * a3.order(), g.order());
        assert!(q.is_abelian());
    }

    #[test]
    fn non_normal_kernel_is_rejected() {
        let g = s3();
        let t = g.index_of(&Perm::parse_cycles("(1 2)", 3).unwrap()).unwrap();
        let h = g.subgroup_generated(&[t]);
        assert_eq!(QuotientGroup::new(&g, h).err(), Some(Error::NotNormal));
    }

    #[test]
    fn projection_is_a_homomorphism() {
        let g = FiniteGroup::generate(
            4,
            vec![
                Perm::parse_cycles("(1 2 3 4)", 4).unwrap(),
                Perm::parse_cycles("(1 2)", 4).unwrap(),
            ],
        )
        .unwrap();
        for n in g.normal_subgroups() {
            let q = QuotientGroup::new(&g, n.clone()).unwrap();
            assert!(q.spot_check_table());
            assert_eq!(q.order() * n.order(), g.order());
            for a in 0..g.order() {
                for b in 0..g.order() {
                    assert_eq!(q.project(g.mul(a, b)), q.mul(q.project(a), q.project(b)));
                }
            }
        }
    }
}
