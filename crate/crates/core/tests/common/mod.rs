//! Independent oracles for the integration tests. Nothing here calls into the
//! library's linear algebra.

#![allow(dead_code)]

pub const P: u64 = 2_147_483_647;

pub fn md(a: u64, b: u64, p: u64) -> u64 {
    ((a as u128 * b as u128) % p as u128) as u64
}

pub fn inv(a: u64, p: u64) -> u64 {
    let (mut r, mut base, mut e) = (1u64, a % p, p - 2);
    while e > 0 {
        if e & 1 == 1 {
            r = md(r, base, p);
        }
        base = md(base, base, p);
        e >>= 1;
    }
    r
}

/// Rank of a list of rows over `F_p` by plain Gaussian elimination.
pub fn rank_mod(rows: &[Vec<u64>], p: u64) -> usize {
    let mut m: Vec<Vec<u64>> = rows.iter().map(|r| r.iter().map(|x| x % p).collect()).collect();
    let cols = m.first().map_or(0, Vec::len);
    let mut rank = 0;
    for c in 0..cols {
        let Some(piv) = (rank..m.len()).find(|&r| m[r][c] != 0) else {
            continue;
        };
        m.swap(rank, piv);
        let iv = inv(m[rank][c], p);
        for r in 0..m.len() {
            if r != rank && m[r][c] != 0 {
                let k = md(m[r][c], iv, p);
                for j in c..cols {
                    let s = md(k, m[rank][j], p);
                    m[r][j] = (m[r][j] + p - s) % p;
                }
            }
        }
        rank += 1;
    }
    rank
}

pub fn neg(a: u64, p: u64) -> u64 {
    (p - a % p) % p
}

/// Dimension of the centralizer of `x` in `gl_n` (integer matrix, solved mod p).
pub fn centralizer_dim(x: &[Vec<i64>], p: u64) -> usize {
    let n = x.len();
    let red = |v: i64| v.rem_euclid(p as i64) as u64;
    // unknown y_{kl} at column k*n+l; equation (xy - yx)_{ij} = 0
    let mut rows = Vec::new();
    for i in 0..n {
        for j in 0..n {
            let mut row = vec![0u64; n * n];
            for k in 0..n {
                row[k * n + j] = (row[k * n + j] + red(x[i][k])) % p;
                row[i * n + k] = (row[i * n + k] + p - red(x[k][j])) % p;
            }
            rows.push(row);
        }
    }
    n * n - rank_mod(&rows, p)
}

/// Jordan block matrix with blocks of the given sizes.
pub fn jordan(parts: &[usize]) -> Vec<Vec<i64>> {
    let n: usize = parts.iter().sum();
    let mut m = vec![vec![0; n]; n];
    let mut start = 0;
    for &b in parts {
        for i in start..start + b - 1 {
            m[i][i + 1] = 1;
        }
        start += b;
    }
    m
}

/// All partitions of `n`, largest parts first.
pub fn partitions(n: usize) -> Vec<Vec<usize>> {
    fn go(n: usize, max: usize, cur: &mut Vec<usize>, out: &mut Vec<Vec<usize>>) {
        if n == 0 {
            out.push(cur.clone());
            return;
        }
        for k in (1..=n.min(max)).rev() {
            cur.push(k);
            go(n - k, k, cur, out);
            cur.pop();
        }
    }
    let mut out = Vec::new();
    go(n, n, &mut Vec::new(), &mut out);
    out
}

/// All compositions of `n`.
pub fn compositions(n: usize) -> Vec<Vec<usize>> {
    if n == 0 {
        return vec![vec![]];
    }
    let mut out = Vec::new();
    for first in 1..=n {
        for mut rest in compositions(n - first) {
            rest.insert(0, first);
            out.push(rest);
        }
    }
    out
}

/// Jordan type of a nilpotent matrix mod p from the ranks of its powers.
pub fn jordan_type_mod(x: &[Vec<u64>], p: u64) -> Vec<usize> {
    let n = x.len();
    let mul = |a: &[Vec<u64>], b: &[Vec<u64>]| -> Vec<Vec<u64>> {
        (0..n)
            .map(|i| (0..n).map(|j| (0..n).fold(0, |s, k| (s + md(a[i][k], b[k][j], p)) % p)).collect())
            .collect()
    };
    let mut ranks = vec![n];
    let mut pw = x.to_vec();
    while *ranks.last().unwrap() > 0 {
        ranks.push(rank_mod(&pw, p));
        if ranks.len() > n + 2 {
            return Vec::new(); // not nilpotent
        }
        pw = mul(&pw, x);
    }
    // number of blocks of size >= k is r_{k-1} - r_k
    let ge: Vec<usize> = ranks.windows(2).map(|w| w[0] - w[1]).collect();
    let mut parts = Vec::new();
    for k in (0..ge.len()).rev() {
        let exactly = ge[k] - ge.get(k + 1).copied().unwrap_or(0);
        parts.extend(std::iter::repeat_n(k + 1, exactly));
    }
    parts
}
