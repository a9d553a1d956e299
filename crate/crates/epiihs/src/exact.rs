//! Exact rational evaluation of finite harmonic sums.
//!
//! Three routes compute the same `S_{a_k}(N)` independently:
//!
//! * [`brute_force_sum`]: recursion over weakly decreasing index tuples with a
//!   running big-integer product,
//! * [`harmonic_sum_exact`]: the column recurrence
//!   `S_{a_k}(n) = S_{a_k}(n-1) + S_{a_(k-1)}(n) / n^a`, cost `O(k N)`,
//! * [`partition_sum`]: iteration over fixed-length partitions in
//!   reverse-lexicographic order.
//!
//! [`qseries_coefficient`] and [`partition_weight_sum`] realize both sides of
//! the identity: the coefficient of `q^M` in
//! `prod_{n<=N} 1 / (1 - (t^a / n^a) q^n)` equals the sum over partitions of
//! `M` with parts at most `N` of `prod_i t^a / part_i^a`.
//!
//! Enumeration routes refuse to start past [`ENUMERATION_LIMIT`] tuples.

use std::fmt;

use num::{BigInt, BigRational, BigUint, One, Zero};

use crate::{Error, Result};

/// Hard ceiling on tuples or partitions an enumeration route will visit.
pub const ENUMERATION_LIMIT: u128 = 10_000_000;

/// Upper summation cutoff: a concrete integer or the infinite limit.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Cutoff {
    Finite(u64),
    Infinite,
}

impl fmt::Display for Cutoff {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Cutoff::Finite(n) => write!(f, "{n}"),
            Cutoff::Infinite => write!(f, "inf"),
        }
    }
}

/// A validated harmonic-sum instance `S_{a_k}(N)`.
///
/// Invariants: `a >= 1`, finite cutoffs are `>= 1`, and an infinite cutoff
/// with `k >= 1` requires `a >= 2` (the `a = 1` tail diverges).
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub struct HarmonicSpec {
    a: u32,
    k: u32,
    cutoff: Cutoff,
}

impl HarmonicSpec {
    pub fn new(a: u32, k: u32, cutoff: Cutoff) -> Result<Self> {
        if a == 0 {
            return Err(Error::InvalidInput("exponent a must be >= 1".into()));
        }
        match cutoff {
            Cutoff::Finite(0) => {
                Err(Error::InvalidInput("finite cutoff N must be >= 1".into()))
            }
            Cutoff::Infinite if a < 2 && k >= 1 => Err(Error::InvalidInput(
                "S_{1_k}(inf) diverges for k >= 1; an infinite cutoff needs a >= 2".into(),
            )),
            _ => Ok(Self { a, k, cutoff }),
        }
    }

    pub fn a(&self) -> u32 {
        self.a
    }

    pub fn k(&self) -> u32 {
        self.k
    }

    pub fn cutoff(&self) -> Cutoff {
        self.cutoff
    }

    /// The concrete cutoff, or an error for routes that need one.
    pub fn finite_n(&self) -> Result<u64> {
        match self.cutoff {
            Cutoff::Finite(n) => Ok(n),
            Cutoff::Infinite => Err(Error::InvalidInput(
                "this route needs a finite cutoff".into(),
            )),
        }
    }
}

/// Number of weakly decreasing `k`-tuples over `1..=n`, i.e. `C(n+k-1, k)`.
///
/// Partial values `C(n-1+i, i)` are nondecreasing in `i`, so once one exceeds
/// [`ENUMERATION_LIMIT`] it is returned as a lower bound for the total.
fn weakly_decreasing_tuple_count(n: u64, k: u32) -> u128 {
    let mut count: u128 = 1;
    for i in 1..=k as u128 {
        count = count * (n as u128 - 1 + i) / i;
        if count > ENUMERATION_LIMIT {
            return count;
        }
    }
    count
}

/// Number of partitions of `size` with parts at most `max_part`, saturating
/// once the count exceeds [`ENUMERATION_LIMIT`].
fn bounded_partition_count(size: u64, max_part: u64) -> u128 {
    if size == 0 {
        return 1;
    }
    let size = size as usize;
    let cap = max_part.min(size as u64) as usize;
    // ways[s] = partitions of s with parts at most the current part bound
    let mut ways = vec![0u128; size + 1];
    ways[0] = 1;
    for part in 1..=cap {
        for s in part..=size {
            ways[s] = (ways[s] + ways[s - part]).min(ENUMERATION_LIMIT + 1);
        }
    }
    ways[size]
}

fn guard_tuples(n: u64, k: u32) -> Result<()> {
    let tuples = weakly_decreasing_tuple_count(n, k);
    if tuples > ENUMERATION_LIMIT {
        return Err(Error::EnumerationTooLarge {
            tuples,
            limit: ENUMERATION_LIMIT,
        });
    }
    Ok(())
}

fn guard_partitions(size: u64, max_part: u64) -> Result<()> {
    let tuples = bounded_partition_count(size, max_part);
    if tuples > ENUMERATION_LIMIT {
        return Err(Error::EnumerationTooLarge {
            tuples,
            limit: ENUMERATION_LIMIT,
        });
    }
    Ok(())
}

/// An integer partition: weakly decreasing positive parts.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct Partition {
    parts: Vec<u64>,
}

impl Partition {
    pub fn new(parts: Vec<u64>) -> Result<Self> {
        if parts.contains(&0) {
            return Err(Error::InvalidInput("partition parts must be >= 1".into()));
        }
        if parts.windows(2).any(|w| w[0] < w[1]) {
            return Err(Error::InvalidInput(
                "partition parts must be weakly decreasing".into(),
            ));
        }
        Ok(Self { parts })
    }

    fn from_sorted(parts: Vec<u64>) -> Self {
        debug_assert!(parts.iter().all(|&p| p >= 1));
        debug_assert!(parts.windows(2).all(|w| w[0] >= w[1]));
        Self { parts }
    }

    pub fn parts(&self) -> &[u64] {
        &self.parts
    }

    pub fn length(&self) -> usize {
        self.parts.len()
    }

    pub fn size(&self) -> u128 {
        self.parts.iter().map(|&p| p as u128).sum()
    }

    /// Product of all parts.
    pub fn part_product(&self) -> BigUint {
        let mut prod = BigUint::one();
        for &p in &self.parts {
            prod *= p;
        }
        prod
    }
}

/// All weakly decreasing `length`-tuples over `1..=max_part`, i.e. partitions
/// with exactly `length` parts each at most `max_part`, in
/// reverse-lexicographic (descending) order.
pub fn fixed_length_partitions(length: u32, max_part: u64) -> FixedLengthPartitions {
    let current = if length == 0 {
        Some(Vec::new())
    } else if max_part == 0 {
        None
    } else {
        Some(vec![max_part; length as usize])
    };
    FixedLengthPartitions { current }
}

pub struct FixedLengthPartitions {
    current: Option<Vec<u64>>,
}

impl Iterator for FixedLengthPartitions {
    type Item = Partition;

    fn next(&mut self) -> Option<Partition> {
        let cur = self.current.take()?;
        // Descend: lower the rightmost part that can drop, then reset the
        // suffix to the new value (the largest weakly decreasing refill).
        match cur.iter().rposition(|&p| p > 1) {
            Some(i) => {
                let mut next = cur.clone();
                let v = next[i] - 1;
                for slot in next[i..].iter_mut() {
                    *slot = v;
                }
                self.current = Some(next);
            }
            None => self.current = None,
        }
        Some(Partition::from_sorted(cur))
    }
}

/// All partitions of `size` with parts at most `max_part`, in
/// reverse-lexicographic order. `size = 0` yields the empty partition.
pub fn partitions_of(size: u64, max_part: u64) -> PartitionsOf {
    let current = if size == 0 {
        Some(Vec::new())
    } else if max_part == 0 {
        None
    } else {
        Some(greedy_fill(size, max_part))
    };
    PartitionsOf { current }
}

pub struct PartitionsOf {
    current: Option<Vec<u64>>,
}

fn greedy_fill(mut remaining: u64, cap: u64) -> Vec<u64> {
    let mut parts = Vec::new();
    while remaining > 0 {
        let p = cap.min(remaining);
        parts.push(p);
        remaining -= p;
    }
    parts
}

impl Iterator for PartitionsOf {
    type Item = Partition;

    fn next(&mut self) -> Option<Partition> {
        let cur = self.current.take()?;
        let mut next = cur.clone();
        // Pool the trailing 1s plus one unit from the last part > 1, then
        // refill greedily below that part's new value.
        let mut pool: u64 = 0;
        while next.last() == Some(&1) {
            next.pop();
            pool += 1;
        }
        match next.pop() {
            Some(p) => {
                pool += p;
                let cap = p - 1;
                let mut refill = pool;
                while refill > 0 {
                    let q = cap.min(refill);
                    next.push(q);
                    refill -= q;
                }
                self.current = Some(next);
            }
            None => self.current = None,
        }
        Some(Partition::from_sorted(cur))
    }
}

fn one() -> BigRational {
    BigRational::one()
}

fn inverse_power(base: &BigUint, exp: u32) -> BigRational {
    BigRational::new(BigInt::one(), BigInt::from(base.pow(exp)))
}

/// `S_{a_k}(N)` by recursion over weakly decreasing tuples, carrying the
/// running index product. Guarded by [`ENUMERATION_LIMIT`].
pub fn brute_force_sum(spec: &HarmonicSpec) -> Result<BigRational> {
    let n = spec.finite_n()?;
    guard_tuples(n, spec.k())?;
    if spec.k() == 0 {
        return Ok(one());
    }
    let mut acc = BigRational::zero();
    descend(n, spec.k(), &BigUint::one(), spec.a(), &mut acc);
    Ok(acc)
}

fn descend(max_index: u64, depth_left: u32, prod: &BigUint, a: u32, acc: &mut BigRational) {
    if depth_left == 0 {
        *acc += inverse_power(prod, a);
        return;
    }
    for v in 1..=max_index {
        descend(v, depth_left - 1, &(prod * v), a, acc);
    }
}

/// `S_{a_k}(N)` by the column recurrence, cost `O(k N)` rational operations.
pub fn harmonic_sum_exact(spec: &HarmonicSpec) -> Result<BigRational> {
    let n = spec.finite_n()? as usize;
    if spec.k() == 0 {
        return Ok(one());
    }
    let inv: Vec<BigRational> = (1..=n)
        .map(|j| inverse_power(&BigUint::from(j), spec.a()))
        .collect();
    // row[j] = S_{a_level}(j); level 0 is identically 1.
    let mut row = vec![one(); n + 1];
    for _level in 1..=spec.k() {
        let mut next = Vec::with_capacity(n + 1);
        next.push(BigRational::zero());
        for j in 1..=n {
            let cell = &next[j - 1] + &row[j] * &inv[j - 1];
            next.push(cell);
        }
        row = next;
    }
    Ok(row[n].clone())
}

/// `S_{a_k}(N)` as a sum over exactly-`k`-part partitions with parts at most
/// `N`. Guarded by [`ENUMERATION_LIMIT`].
pub fn partition_sum(spec: &HarmonicSpec) -> Result<BigRational> {
    let n = spec.finite_n()?;
    guard_tuples(n, spec.k())?;
    let mut acc = BigRational::zero();
    for part in fixed_length_partitions(spec.k(), n) {
        acc += inverse_power(&part.part_product(), spec.a());
    }
    Ok(acc)
}

/// Coefficient of `q^m_order` in `prod_{n<=n_max} 1 / (1 - (t^a / n^a) q^n)`,
/// by truncated in-place multiplication of geometric factors.
pub fn qseries_coefficient(
    n_max: u64,
    m_order: u64,
    t: &BigRational,
    a: u32,
) -> Result<BigRational> {
    if a == 0 {
        return Err(Error::InvalidInput("exponent a must be >= 1".into()));
    }
    if n_max == 0 {
        return Err(Error::InvalidInput("product cutoff must be >= 1".into()));
    }
    let m = m_order as usize;
    let ta = t.pow(a as i32);
    let mut coeffs = vec![BigRational::zero(); m + 1];
    coeffs[0] = one();
    for n in 1..=n_max.min(m_order) as usize {
        // Multiply by 1/(1 - c q^n): new[j] = old[j] + c new[j-n], ascending j.
        let c = &ta * inverse_power(&BigUint::from(n), a);
        for j in n..=m {
            let add = &c * &coeffs[j - n];
            coeffs[j] += add;
        }
    }
    Ok(coeffs[m].clone())
}

/// The partition side of the q-series identity: sum over partitions of
/// `m_order` with parts at most `n_max` of `prod_i t^a / part_i^a`.
/// Guarded by [`ENUMERATION_LIMIT`].
pub fn partition_weight_sum(
    n_max: u64,
    m_order: u64,
    t: &BigRational,
    a: u32,
) -> Result<BigRational> {
    if a == 0 {
        return Err(Error::InvalidInput("exponent a must be >= 1".into()));
    }
    if n_max == 0 {
        return Err(Error::InvalidInput("product cutoff must be >= 1".into()));
    }
    guard_partitions(m_order, n_max)?;
    let ta = t.pow(a as i32);
    let mut acc = BigRational::zero();
    for part in partitions_of(m_order, n_max) {
        let weight = ta.pow(part.length() as i32)
            * inverse_power(&part.part_product(), a);
        acc += weight;
    }
    Ok(acc)
}
