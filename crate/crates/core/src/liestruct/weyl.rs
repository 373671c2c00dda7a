//! Double cosets `W_P \ S_n / W_Q` of Young subgroups, by explicit enumeration.

use super::parabolic::ParabolicComposition;
use crate::error::{Error, Result};

pub const MAX_ENUMERATION_RANK: usize = 8;

/// Lexicographic rank of a permutation of `0..n` (Lehmer code).
fn perm_rank(perm: &[usize]) -> usize {
    let n = perm.len();
    let mut rank = 0;
    for i in 0..n {
        let smaller = perm[i + 1..].iter().filter(|&&x| x < perm[i]).count();
        rank = rank * (n - i) + smaller;
    }
    rank
}

/// All permutations of `0..n` in lexicographic order.
pub fn permutations(n: usize) -> Vec<Vec<usize>> {
    let mut current: Vec<usize> = (0..n).collect();
    let mut out = vec![current.clone()];
    loop {
        let Some(i) = (1..n).rev().find(|&i| current[i - 1] < current[i]) else {
            return out;
        };
        let j = (i..n).rev().find(|&j| current[j] > current[i - 1]).expect("successor exists");
        current.swap(i - 1, j);
        current[i..].reverse();
        out.push(current.clone());
    }
}

/// Adjacent transpositions `(k, k+1)` generating the Young subgroup of `p`.
fn young_generators(p: &ParabolicComposition) -> Vec<usize> {
    p.block_ranges()
        .into_iter()
        .flat_map(|r| r.start..r.end.saturating_sub(1))
        .collect()
}

fn find(parent: &mut [usize], mut x: usize) -> usize {
    while parent[x] != x {
        parent[x] = parent[parent[x]];
        x = parent[x];
    }
    x
}

/// Minimal (lexicographically least) representatives of the double cosets
/// `W_P w W_Q`, in increasing order. `W_P` acts on values, `W_Q` on positions.
pub fn double_coset_representatives(
    n: usize,
    p: &ParabolicComposition,
    q: &ParabolicComposition,
) -> Result<Vec<Vec<usize>>> {
    if n > MAX_ENUMERATION_RANK {
        return Err(Error::TooLarge(n));
    }
    if p.n() != n || q.n() != n {
        return Err(Error::InvalidComposition(format!(
            "compositions {p} and {q} must both sum to {n}"
        )));
    }
    let perms = permutations(n);
    let mut parent: Vec<usize> = (0..perms.len()).collect();
    let left = young_generators(p);
    let right = young_generators(q);
    for (idx, w) in perms.iter().enumerate() {
        for &k in &left {
            // s_k * w swaps the values k and k+1
            let sw: Vec<usize> = w
                .iter()
                .map(|&v| if v == k { k + 1 } else if v == k + 1 { k } else { v })
                .collect();
            union(&mut parent, idx, perm_rank(&sw));
        }
        for &k in &right {
            // w * s_k swaps the positions k and k+1
            let mut ws = w.clone();
            ws.swap(k, k + 1);
            union(&mut parent, idx, perm_rank(&ws));
        }
    }
    // perms are in lexicographic order, so the first index seen in each class is its minimum
    let mut seen = vec![false; perms.len()];
    let mut reps = Vec::new();
    for idx in 0..perms.len() {
        let root = find(&mut parent, idx);
        if !seen[root] {
            seen[root] = true;
            reps.push(perms[idx].clone());
        }
    }
    Ok(reps)
}

fn union(parent: &mut [usize], a: usize, b: usize) {
    let ra = find(parent, a);
    let rb = find(parent, b);
    if ra != rb {
        let (lo, hi) = if ra < rb { (ra, rb) } else { (rb, ra) };
        parent[hi] = lo;
    }
}

/// Number of `(W_P, W_Q)` double cosets in `S_n`; counts `P`-orbits on `G/Q`.
pub fn weyl_double_coset_count(n: usize, p: &ParabolicComposition, q: &ParabolicComposition) -> Result<usize> {
    Ok(double_coset_representatives(n, p, q)?.len())
}
