//! Brute-force oracles.
//!
//! Nothing here calls into the closed forms of [`crate::termirial`]: the
//! iterated sum is evaluated literally, one sigma level per order, and
//! binomial coefficients are reproduced by listing subsets.

use std::fmt;

use crate::error::GuardError;
use crate::termirial::{Natural, Order};

/// Largest `n` accepted by [`nested_sum`].
pub const NESTED_SUM_MAX_N: u64 = 60;
/// Largest order accepted by [`nested_sum`].
pub const NESTED_SUM_MAX_ORDER: i64 = 8;
/// Largest ground set accepted by [`subsets`].
pub const SUBSETS_MAX_N: u64 = 20;

/// Iterated sum with `p` sigma levels:
/// `sum_{m=1}^{n} sum_{l=1}^{m} ... sum_{i=1}^{j} i`.
///
/// Order 0 is `n` itself. The projected work `n^p` must fit in `budget`.
pub fn nested_sum(n: u64, p: Order, budget: u64) -> Result<Natural, GuardError> {
    let p = p.get();
    if n == 0 {
        return Err(GuardError::OutOfDomain("nested_sum needs n >= 1".into()));
    }
    if p < 0 {
        return Err(GuardError::OutOfDomain("nested_sum needs p >= 0".into()));
    }
    if n > NESTED_SUM_MAX_N {
        return Err(GuardError::SizeLimit {
            what: "n",
            value: n,
            limit: NESTED_SUM_MAX_N,
        });
    }
    if p > NESTED_SUM_MAX_ORDER {
        return Err(GuardError::SizeLimit {
            what: "p",
            value: p as u64,
            limit: NESTED_SUM_MAX_ORDER as u64,
        });
    }
    GuardError::check(Natural::from(n).pow(p as u32), budget)?;
    Ok(Natural::from(sigma(p as u32, n)))
}

fn sigma(levels: u32, upper: u64) -> u128 {
    if levels == 0 {
        return u128::from(upper);
    }
    let mut total = 0u128;
    for k in 1..=upper {
        total += sigma(levels - 1, k);
    }
    total
}

/// All `p`-element subsets of `{1..=n}` in lexicographic order, each sorted
/// ascending.
pub fn subsets(n: u64, p: u64, budget: u64) -> Result<Vec<Vec<u64>>, GuardError> {
    if p > n {
        return Err(GuardError::OutOfDomain(format!(
            "subset size {p} exceeds ground set size {n}"
        )));
    }
    if n > SUBSETS_MAX_N {
        return Err(GuardError::SizeLimit {
            what: "n",
            value: n,
            limit: SUBSETS_MAX_N,
        });
    }
    // size guard only; the listing below does not consult it
    GuardError::check(crate::termirial::binomial(n, p), budget)?;

    let k = p as usize;
    let mut out = Vec::new();
    let mut current: Vec<u64> = (1..=p).collect();
    loop {
        out.push(current.clone());
        // rightmost position that can still advance
        let Some(pos) = (0..k).rev().find(|&i| current[i] < n - (k - 1 - i) as u64) else {
            break;
        };
        current[pos] += 1;
        for j in pos + 1..k {
            current[j] = current[j - 1] + 1;
        }
    }
    Ok(out)
}

/// One branch of the subset tree: every subset whose smallest element is
/// `leading`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Group {
    pub leading: u64,
    pub count: u64,
}

/// `C(n, p)` split by the smallest element of each subset.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Decomposition {
    pub n: u64,
    pub p: u64,
    pub groups: Vec<Group>,
}

impl Decomposition {
    pub fn counts(&self) -> Vec<u64> {
        self.groups.iter().map(|g| g.count).collect()
    }

    pub fn total(&self) -> u64 {
        self.groups.iter().map(|g| g.count).sum()
    }

    /// Each group count read as a termirial `(k, order)`.
    ///
    /// The group led by `s` holds `C(n-s, p-1)` subsets, which is the
    /// order-`(p-2)` termirial of `n-s-p+2`.
    pub fn termirial_reading(&self) -> Vec<(u64, Order)> {
        let order = Order::new(self.p as i64 - 2).expect("p >= 1");
        self.groups
            .iter()
            .map(|g| (self.n + 2 - g.leading - self.p, order))
            .collect()
    }

    /// The whole sum read as a termirial: `C(n, p)` is the order-`(p-1)`
    /// termirial of `n-p+1`.
    pub fn total_reading(&self) -> (u64, Order) {
        (
            self.n + 1 - self.p,
            Order::new(self.p as i64 - 1).expect("p >= 1"),
        )
    }
}

impl fmt::Display for Decomposition {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let parts: Vec<String> = self.counts().iter().map(u64::to_string).collect();
        write!(
            f,
            "C({}, {}) = {} = {}",
            self.n,
            self.p,
            parts.join(" + "),
            self.total()
        )
    }
}

/// Enumerate the `p`-subsets of `{1..=n}` and group them by minimum.
///
/// For `p = 2` the counts are `n-1, n-2, ..., 1`; for `p = 3` they are the
/// triangular numbers in descending order.
pub fn decompose_by_leading(n: u64, p: u64, budget: u64) -> Result<Decomposition, GuardError> {
    if p == 0 {
        return Err(GuardError::OutOfDomain("decomposition needs p >= 1".into()));
    }
    let all = subsets(n, p, budget)?;
    let mut groups: Vec<Group> = Vec::new();
    for s in &all {
        let leading = s[0];
        match groups.last_mut() {
            Some(g) if g.leading == leading => g.count += 1,
            _ => groups.push(Group { leading, count: 1 }),
        }
    }
    Ok(Decomposition { n, p, groups })
}
