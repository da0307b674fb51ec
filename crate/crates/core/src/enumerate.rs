//! All commutative ai-semirings of order at most 3, up to isomorphism.
//!
//! Addition tables are enumerated as symmetric idempotent tables and kept
//! when associative; multiplication tables as all symmetric tables, kept when
//! associative and distributive. Each survivor is reduced to the least
//! encoding among its images under carrier permutations.

use alloc::vec::Vec;

use thiserror::Error;

use crate::algebra::FiniteAiSemiring;

/// Largest order accepted by [`enumerate_ai_semirings`].
pub const MAX_ORDER: usize = 3;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum EnumerateError {
    #[error("order {0} is outside 1..={MAX_ORDER}")]
    OrderOutOfRange(usize),
}

fn permutations(n: usize) -> Vec<Vec<usize>> {
    if n == 0 {
        return alloc::vec![Vec::new()];
    }
    let mut out = Vec::new();
    for p in permutations(n - 1) {
        for i in 0..=p.len() {
            let mut q = p.clone();
            q.insert(i, n - 1);
            out.push(q);
        }
    }
    out
}

/// Symmetric `n x n` tables, with the diagonal fixed to `a + a = a` when
/// `idempotent`, and each free cell ranging over `0..n`.
fn symmetric_tables(n: usize, idempotent: bool) -> Vec<Vec<usize>> {
    let mut cells = Vec::new();
    for i in 0..n {
        for j in i..n {
            if !(idempotent && i == j) {
                cells.push((i, j));
            }
        }
    }
    let total = n.pow(cells.len() as u32);
    let mut out = Vec::with_capacity(total);
    for code in 0..total {
        let mut t = alloc::vec![0; n * n];
        if idempotent {
            for i in 0..n {
                t[i * n + i] = i;
            }
        }
        let mut c = code;
        for &(i, j) in &cells {
            let v = c % n;
            c /= n;
            t[i * n + j] = v;
            t[j * n + i] = v;
        }
        out.push(t);
    }
    out
}

fn associative(n: usize, t: &[usize]) -> bool {
    (0..n).all(|a| {
        (0..n).all(|b| (0..n).all(|c| t[t[a * n + b] * n + c] == t[a * n + t[b * n + c]]))
    })
}

fn distributive(n: usize, add: &[usize], mul: &[usize]) -> bool {
    (0..n).all(|a| {
        (0..n).all(|b| (0..n).all(|c| mul[a * n + add[b * n + c]] == add[mul[a * n + b] * n + mul[a * n + c]]))
    })
}

fn canonical(n: usize, add: &[usize], mul: &[usize], perms: &[Vec<usize>]) -> Vec<usize> {
    let mut best: Option<Vec<usize>> = None;
    for p in perms {
        // p maps old element to new element
        let mut enc = alloc::vec![0; 2 * n * n];
        for a in 0..n {
            for b in 0..n {
                enc[p[a] * n + p[b]] = p[add[a * n + b]];
                enc[n * n + p[a] * n + p[b]] = p[mul[a * n + b]];
            }
        }
        if best.as_ref().is_none_or(|b| enc < *b) {
            best = Some(enc);
        }
    }
    best.expect("at least one permutation")
}

/// One representative of each isomorphism class of commutative ai-semirings
/// of order `n`, in increasing order of canonical encoding.
pub fn enumerate_ai_semirings(n: usize) -> Result<Vec<FiniteAiSemiring>, EnumerateError> {
    if n == 0 || n > MAX_ORDER {
        return Err(EnumerateError::OrderOutOfRange(n));
    }
    let perms = permutations(n);
    let adds: Vec<Vec<usize>> = symmetric_tables(n, true)
        .into_iter()
        .filter(|t| associative(n, t))
        .collect();
    let muls: Vec<Vec<usize>> = symmetric_tables(n, false)
        .into_iter()
        .filter(|t| associative(n, t))
        .collect();
    let mut classes: Vec<Vec<usize>> = Vec::new();
    for add in &adds {
        for mul in &muls {
            if distributive(n, add, mul) {
                classes.push(canonical(n, add, mul, &perms));
            }
        }
    }
    classes.sort();
    classes.dedup();
    Ok(classes
        .into_iter()
        .enumerate()
        .map(|(i, enc)| {
            let (add, mul) = enc.split_at(n * n);
            FiniteAiSemiring::from_flat(
                Some(alloc::format!("E{n}.{i}")),
                n,
                add.to_vec(),
                mul.to_vec(),
                (0..n).map(|e| alloc::format!("{e}")).collect(),
            )
        })
        .collect())
}
