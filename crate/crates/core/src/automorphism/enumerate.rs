use super::{extend_to_table, Automorphism};
use crate::error::{Error, Result};
use crate::group::{FiniteGroup, Group};

/// Largest group order for which the full automorphism group is listed.
pub const AUTOMORPHISM_SEARCH_LIMIT: usize = 128;

/// A generating set built greedily from elements of large order, then pruned.
pub fn small_generating_set(group: &FiniteGroup) -> Vec<usize> {
    let mut by_order: Vec<usize> = (1..group.order()).collect();
    by_order.sort_by_key(|&x| (std::cmp::Reverse(group.element_order(x)), x));
    let mut h = group.trivial();
    let mut gens = Vec::new();
    for x in by_order {
        if h.is_whole() {
            break;
        }
        if !h.contains(x) {
            h.extend(x);
            gens.push(x);
        }
    }
    let mut k = 0;
    while k < gens.len() {
        let rest: Vec<usize> = gens
            .iter()
            .enumerate()
            .filter(|&(j, _)| j != k)
            .map(|(_, &x)| x)
            .collect();
        if group.subgroup_generated(&rest).is_whole() {
            gens = rest;
        } else {
            k += 1;
        }
    }
    gens
}

/// Every automorphism of `group`, found by backtracking over generator images
/// filtered by element order. Refuses groups above [`AUTOMORPHISM_SEARCH_LIMIT`].
pub fn enumerate_automorphisms(group: &FiniteGroup) -> Result<Vec<Automorphism<'_>>> {
    if group.order() > AUTOMORPHISM_SEARCH_LIMIT {
        return Err(Error::TooLarge {
            limit: AUTOMORPHISM_SEARCH_LIMIT,
        });
    }
    if group.order() == 1 {
        return Ok(vec![Automorphism::identity(group)]);
    }
    let gens = small_generating_set(group);
    let orders: Vec<usize> = (0..group.order()).map(|x| group.element_order(x)).collect();
    let candidates: Vec<Vec<usize>> = gens
        .iter()
        .map(|&s| (1..group.order()).filter(|&y| orders[y] == orders[s]).collect())
        .collect();
    let mut out = Vec::new();
    let mut choice = vec![0usize; gens.len()];
    let mut images = vec![0usize; gens.len()];
    let mut depth = 0usize;
    loop {
        if choice[depth] == candidates[depth].len() {
            if depth == 0 {
                break;
            }
            choice[depth] = 0;
            depth -= 1;
            choice[depth] += 1;
            continue;
        }
        images[depth] = candidates[depth][choice[depth]];
        if depth + 1 < gens.len() {
            depth += 1;
            continue;
        }
        if let Some(table) = extend_to_table(group, &gens, &images) {
            if is_bijective(&table) {
                out.push(Automorphism::from_table_unchecked(group, table));
            }
        }
        choice[depth] += 1;
    }
    Ok(out)
}

fn is_bijective(table: &[u32]) -> bool {
    let mut hit = vec![false; table.len()];
    table.iter().all(|&t| !std::mem::replace(&mut hit[t as usize], true))
}
