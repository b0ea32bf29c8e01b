//! Irreducible characters of the symmetric group, dimensions and character
//! ratios at a transposition.

use std::collections::HashMap;

use num_bigint::{BigInt, BigUint};
use num_rational::Rational64;
use num_traits::{One, Zero};
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::partition::Partition;

/// All partitions of `n` with at most `max_len` parts, in decreasing
/// lexicographic order.
pub fn partitions(n: u32, max_len: Option<usize>) -> impl Iterator<Item = Partition> {
    let mut out = Vec::new();
    let mut current = Vec::new();
    fill(n, n, max_len.unwrap_or(usize::MAX), &mut current, &mut out);
    out.into_iter()
}

fn fill(remaining: u32, cap: u32, max_len: usize, current: &mut Vec<u32>, out: &mut Vec<Partition>) {
    if remaining == 0 {
        out.push(Partition::new(current.clone()).expect("generated parts are decreasing"));
        return;
    }
    if current.len() == max_len {
        return;
    }
    for part in (1..=cap.min(remaining)).rev() {
        current.push(part);
        fill(remaining - part, part, max_len, current, out);
        current.pop();
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct CharacterValue {
    pub lambda: Partition,
    pub mu: Partition,
    pub value: BigInt,
}

/// `χ_λ(μ)` by the Murnaghan-Nakayama rule on beta-sets, memoised on
/// (beta-set, number of cycles already removed).
pub fn character(lambda: &Partition, mu: &Partition) -> Result<CharacterValue> {
    if lambda.size() != mu.size() {
        return Err(Error::domain(format!(
            "character needs partitions of the same size, got {lambda} and {mu}"
        )));
    }
    let k = lambda.len() as u32;
    let beta: Vec<u32> = lambda.parts().iter().enumerate().map(|(i, &p)| p + k - 1 - i as u32).collect();
    let mut memo = HashMap::new();
    let value = mn(&beta, mu.parts(), &mut memo);
    Ok(CharacterValue { lambda: lambda.clone(), mu: mu.clone(), value })
}

fn mn(beta: &[u32], cycles: &[u32], memo: &mut HashMap<(Vec<u32>, usize), BigInt>) -> BigInt {
    let Some((&r, rest)) = cycles.split_first() else {
        return BigInt::one();
    };
    let key = (beta.to_vec(), rest.len());
    if let Some(v) = memo.get(&key) {
        return v.clone();
    }
    let mut total = BigInt::zero();
    for (idx, &b) in beta.iter().enumerate() {
        if b < r || beta.contains(&(b - r)) {
            continue;
        }
        let target = b - r;
        let crossed = beta.iter().filter(|&&c| c > target && c < b).count();
        let mut next = beta.to_vec();
        next[idx] = target;
        next.sort_unstable_by(|a, b| b.cmp(a));
        let sub = mn(&next, rest, memo);
        if crossed % 2 == 0 {
            total += sub;
        } else {
            total -= sub;
        }
    }
    memo.insert(key, total.clone());
    total
}

/// `d_λ = n! / ∏ hook lengths`.
pub fn dimension(lambda: &Partition) -> BigUint {
    let conj = lambda.conjugate();
    let mut num: BigUint = (1..=lambda.size()).map(BigUint::from).product();
    let mut hooks = BigUint::one();
    for (i, j) in lambda.cells() {
        let arm = lambda.part(i) as usize - j - 1;
        let leg = conj.part(j) as usize - i - 1;
        hooks *= BigUint::from(arm + leg + 1);
    }
    num /= hooks;
    num
}

/// `r(λ) = χ_λ((2,1^{n-2}))/d_λ = Σ contents / C(n,2)`.
pub fn transposition_ratio(lambda: &Partition) -> Result<Rational64> {
    let n = lambda.size() as i64;
    if n < 2 {
        return Err(Error::domain("transposition ratio needs n >= 2"));
    }
    let contents: i64 = lambda.cells().map(|(i, j)| j as i64 - i as i64).sum();
    Ok(Rational64::new(2 * contents, n * (n - 1)))
}
