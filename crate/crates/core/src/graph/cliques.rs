//! Clique enumeration and the z_r optimum.
//!
//! z_r is reduced to maximal cliques: any family with empty common
//! intersection extends memberwise to maximal cliques, gaining at least one
//! unit of size for every vertex that enters the common intersection, and
//! conversely a residual intersection can be deleted from a single member at
//! a cost of exactly its cardinality. So
//!   z_r = max over r-tuples (D_1,…,D_r) of maximal cliques
//!         of Σ|D_i| − |⋂ D_i|,
//! which is searched by dynamic programming on (picks left, intersection).
//! An exhaustive oracle over all cliques, not only maximal ones, provides the
//! independent check.

use std::collections::HashMap;

use crate::config::Budget;
use crate::error::{Error, Result};
use crate::graph::{CliqueFamily, Graph, VertexSet};

/// True iff every pair of distinct members of `s` is an edge of `g`.
/// The empty set and singletons count as cliques.
pub fn is_clique(g: &Graph, s: &VertexSet) -> Result<bool> {
    let mask = s.mask();
    if mask & !g.full_mask() != 0 {
        return Err(Error::Input(format!(
            "vertex set {s} has members outside 0..{}",
            g.vertex_count()
        )));
    }
    let mut rest = mask;
    while rest != 0 {
        let v = rest.trailing_zeros() as usize;
        rest &= rest - 1;
        if mask & !g.adjacency(v) & !(1 << v) != 0 {
            return Ok(false);
        }
    }
    Ok(true)
}

/// All inclusion-maximal cliques, each once, in canonical order.
///
/// For an edgeless graph this is every singleton; for the graph with no
/// vertices it is the empty clique alone.
pub fn maximal_cliques(g: &Graph) -> Result<Vec<VertexSet>> {
    maximal_cliques_with(g, &Budget::default())
}

/// [`maximal_cliques`] under an explicit vertex cap.
pub fn maximal_cliques_with(g: &Graph, budget: &Budget) -> Result<Vec<VertexSet>> {
    if g.vertex_count() > budget.max_vertices {
        return Err(Error::Resource(format!(
            "clique enumeration refused: {} vertices exceeds the cap of {}",
            g.vertex_count(),
            budget.max_vertices
        )));
    }
    let mut out = Vec::new();
    bron_kerbosch(g, 0, g.full_mask(), 0, &mut out);
    let mut cliques: Vec<VertexSet> = out.into_iter().map(VertexSet::from_mask).collect();
    cliques.sort();
    Ok(cliques)
}

/// Bron–Kerbosch with pivoting on adjacency bitsets.
fn bron_kerbosch(g: &Graph, r: u64, p: u64, x: u64, out: &mut Vec<u64>) {
    if p == 0 && x == 0 {
        out.push(r);
        return;
    }
    // Pivot: vertex of p ∪ x with the most neighbours in p.
    let mut pivot = usize::MAX;
    let mut best = usize::MAX;
    let mut scan = p | x;
    while scan != 0 {
        let u = scan.trailing_zeros() as usize;
        scan &= scan - 1;
        let missing = (p & !g.adjacency(u)).count_ones() as usize;
        if missing < best {
            best = missing;
            pivot = u;
        }
    }
    let mut candidates = p & !g.adjacency(pivot);
    let mut p = p;
    let mut x = x;
    while candidates != 0 {
        let v = candidates.trailing_zeros() as usize;
        let bit = 1u64 << v;
        candidates &= candidates - 1;
        bron_kerbosch(g, r | bit, p & g.adjacency(v), x & g.adjacency(v), out);
        p &= !bit;
        x |= bit;
    }
}

/// Size of the largest clique.
pub fn clique_number(g: &Graph) -> Result<usize> {
    if g.vertex_count() == 0 {
        return Err(Error::Domain("clique number of the empty graph is undefined".into()));
    }
    Ok(maximal_cliques(g)?.iter().map(VertexSet::len).max().unwrap_or(0))
}

/// Maximum of Σ|C_i| over r cliques with empty common intersection.
pub fn z_r(g: &Graph, r: u32) -> Result<usize> {
    z_r_with(g, r, &Budget::default())
}

pub fn z_r_with(g: &Graph, r: u32, budget: &Budget) -> Result<usize> {
    let search = ZSearch::new(g, r, budget)?;
    Ok(search.optimum())
}

/// [`z_r`] together with one optimal family, chosen deterministically:
/// members are picked greedily in canonical clique order and the residual
/// intersection is deleted from the last member.
pub fn z_r_witness(g: &Graph, r: u32) -> Result<(usize, CliqueFamily)> {
    let search = ZSearch::new(g, r, &Budget::default())?;
    let value = search.optimum();
    let family = search.witness(g)?;
    debug_assert_eq!(family.total_size(), value);
    debug_assert!(family.common_intersection().is_empty());
    Ok((value, family))
}

struct ZSearch {
    cliques: Vec<u64>,
    sizes: Vec<usize>,
    r: u32,
    full: u64,
    memo: HashMap<(u32, u64), i64>,
}

impl ZSearch {
    fn new(g: &Graph, r: u32, budget: &Budget) -> Result<Self> {
        if r < 2 {
            return Err(Error::Domain(format!("z_r needs r >= 2, got {r}")));
        }
        if g.vertex_count() == 0 {
            return Err(Error::Domain("z_r of the empty graph is undefined".into()));
        }
        let cliques: Vec<u64> =
            maximal_cliques_with(g, budget)?.iter().map(VertexSet::mask).collect();
        let sizes = cliques.iter().map(|m| m.count_ones() as usize).collect();
        let mut search =
            ZSearch { cliques, sizes, r, full: g.full_mask(), memo: HashMap::new() };
        search.best(r, search.full);
        Ok(search)
    }

    fn optimum(&self) -> usize {
        self.memo[&(self.r, self.full)] as usize
    }

    /// Best achievable Σ sizes − |final intersection| with `picks` cliques
    /// left and `intersection` accumulated so far.
    fn best(&mut self, picks: u32, intersection: u64) -> i64 {
        if picks == 0 {
            return -(intersection.count_ones() as i64);
        }
        if let Some(&v) = self.memo.get(&(picks, intersection)) {
            return v;
        }
        let mut best = i64::MIN;
        for idx in 0..self.cliques.len() {
            let mask = self.cliques[idx];
            let size = self.sizes[idx] as i64;
            let value = size + self.best(picks - 1, intersection & mask);
            best = best.max(value);
        }
        self.memo.insert((picks, intersection), best);
        best
    }

    /// Reconstructs one optimal family from the memo table.
    fn witness(&self, g: &Graph) -> Result<CliqueFamily> {
        let mut members: Vec<u64> = Vec::with_capacity(self.r as usize);
        let mut intersection = self.full;
        for picks in (1..=self.r).rev() {
            let target = self.memo[&(picks, intersection)];
            for idx in 0..self.cliques.len() {
                let mask = self.cliques[idx];
                let size = self.sizes[idx] as i64;
                let rest = if picks == 1 {
                    -((intersection & mask).count_ones() as i64)
                } else {
                    self.memo[&(picks - 1, intersection & mask)]
                };
                if size + rest == target {
                    members.push(mask);
                    intersection &= mask;
                    break;
                }
            }
        }
        debug_assert_eq!(members.len(), self.r as usize);
        // Delete the residual intersection from the last member.
        if intersection != 0 {
            let last = members.last_mut().unwrap();
            *last &= !intersection;
        }
        CliqueFamily::new(g, members.into_iter().map(VertexSet::from_mask).collect())
    }
}

/// Exhaustive oracle for [`z_r`]: enumerates every clique (the empty set and
/// singletons included) and maximizes over r-multisets directly.
pub fn z_r_bruteforce(g: &Graph, r: u32) -> Result<usize> {
    z_r_bruteforce_with(g, r, &Budget::default())
}

pub fn z_r_bruteforce_with(g: &Graph, r: u32, budget: &Budget) -> Result<usize> {
    if r < 2 {
        return Err(Error::Domain(format!("z_r needs r >= 2, got {r}")));
    }
    if g.vertex_count() == 0 {
        return Err(Error::Domain("z_r of the empty graph is undefined".into()));
    }
    let cliques = all_cliques(g);
    let combinations = multiset_count(cliques.len() as u128, r);
    if combinations > budget.max_oracle_tuples {
        return Err(Error::Resource(format!(
            "oracle search space of {combinations} clique multisets exceeds the cap of {}",
            budget.max_oracle_tuples
        )));
    }
    let sizes: Vec<usize> = cliques.iter().map(|m| m.count_ones() as usize).collect();
    let mut best = 0usize;
    let mut stack: Vec<(usize, u64, usize, u32)> = vec![(0, g.full_mask(), 0, r)];
    while let Some((start, intersection, sum, left)) = stack.pop() {
        if left == 0 {
            if intersection == 0 {
                best = best.max(sum);
            }
            continue;
        }
        for idx in start..cliques.len() {
            stack.push((idx, intersection & cliques[idx], sum + sizes[idx], left - 1));
        }
    }
    Ok(best)
}

/// Number of multisets of size r from n items: C(n + r − 1, r).
fn multiset_count(n: u128, r: u32) -> u128 {
    let mut value: u128 = 1;
    for k in 0..r as u128 {
        value = value.saturating_mul(n + k) / (k + 1);
    }
    value
}

/// Every clique of `g`, as bitsets, the empty clique included.
fn all_cliques(g: &Graph) -> Vec<u64> {
    let mut out = Vec::new();
    let mut stack: Vec<(u64, u64)> = vec![(0, g.full_mask())];
    while let Some((current, allowed)) = stack.pop() {
        out.push(current);
        let mut rest = allowed;
        while rest != 0 {
            let v = rest.trailing_zeros() as usize;
            rest &= rest - 1;
            let above = if v + 1 >= 64 { 0 } else { u64::MAX << (v + 1) };
            stack.push((current | (1 << v), allowed & g.adjacency(v) & above));
        }
    }
    out
}
