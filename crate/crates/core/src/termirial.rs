//! Exact arithmetic kernel: factorial, binomial and the generalized termirial.
//!
//! The order-`p` termirial of `n` is the `(p+1)`-simplicial polytopic number
//! `C(n+p, p+1)`: order 1 gives the triangular numbers, order 2 the
//! tetrahedral numbers, and so on. Orders 0 and -1 are the constants `n` and
//! `1`. Every value is an arbitrary-precision [`Natural`].

use std::fmt;

use num_bigint::BigUint;
use num_traits::{One, Zero};

use crate::error::InvalidOrder;

/// Arbitrary-precision non-negative integer.
pub type Natural = BigUint;

/// Termirial order. Always `>= -1`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Order(i64);

impl Order {
    pub const MINUS_ONE: Order = Order(-1);
    pub const ZERO: Order = Order(0);
    pub const ONE: Order = Order(1);

    pub fn new(p: i64) -> Result<Self, InvalidOrder> {
        if p < -1 {
            Err(InvalidOrder(p))
        } else {
            Ok(Order(p))
        }
    }

    pub fn get(self) -> i64 {
        self.0
    }

    /// The next order up.
    pub fn succ(self) -> Order {
        Order(self.0 + 1)
    }

    /// The next order down, or `None` at -1.
    pub fn pred(self) -> Option<Order> {
        Order::new(self.0 - 1).ok()
    }
}

impl TryFrom<i64> for Order {
    type Error = InvalidOrder;

    fn try_from(p: i64) -> Result<Self, Self::Error> {
        Order::new(p)
    }
}

impl From<u32> for Order {
    fn from(p: u32) -> Self {
        Order(i64::from(p))
    }
}

impl fmt::Display for Order {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.0)
    }
}

/// `n!`, with `0! = 1`.
pub fn factorial(n: u64) -> Natural {
    (1..=n).fold(Natural::one(), |acc, i| acc * i)
}

/// `C(n, k)` by the running product `prod (n-k+i)/i`, exact at every step.
///
/// Returns 0 when `k > n`.
pub fn binomial(n: u64, k: u64) -> Natural {
    if k > n {
        return Natural::zero();
    }
    let k = k.min(n - k);
    let base = n - k;
    let mut acc = Natural::one();
    for i in 1..=k {
        // acc holds C(base + i - 1, i - 1); the product with (base + i) is divisible by i.
        acc *= base + i;
        acc /= i;
    }
    acc
}

/// The plain (order-1) termirial: the triangular number `n(n+1)/2`.
pub fn termirial(n: u64) -> Natural {
    let n = Natural::from(n);
    (&n * (&n + 1u32)) >> 1
}

/// Order-`p` termirial of `n`, `prod_{i=0}^{p} (n+i) / (p+1)!`.
///
/// Built incrementally: after step `i` the accumulator equals `C(n+i, i+1)`,
/// so each division is exact. `n = 0` gives 0 for `p >= 0`; order -1 is 1.
pub fn termirial_p(n: u64, p: Order) -> Natural {
    let p = p.get();
    if p < 0 {
        return Natural::one();
    }
    let n = Natural::from(n);
    let mut acc = Natural::one();
    for i in 0..=(p as u64) {
        acc *= &n + i;
        acc /= i + 1;
    }
    acc
}

/// Order-`p` termirial through its binomial form `C(n+p, p+1)`.
///
/// Independent of [`termirial_p`]; the two are cross-checked in tests.
pub fn termirial_p_binomial(n: u64, p: Order) -> Natural {
    match p.get() {
        -1 => Natural::one(), // C(n-1, 0)
        p => binomial(n + p as u64, p as u64 + 1),
    }
}

/// A termirial value together with its binomial reading.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct TermirialExpr {
    pub n: u64,
    pub p: Order,
    pub value: Natural,
    /// `(top, bottom)` with `value == C(top, bottom)`.
    pub binomial_form: (Natural, Natural),
}

impl TermirialExpr {
    pub fn new(n: u64, p: Order) -> Self {
        // top = n + p; at (0, -1) it clamps to C(0, 0).
        let top = match p.get() {
            -1 => Natural::from(n.saturating_sub(1)),
            p => Natural::from(n) + p as u64,
        };
        let bottom = Natural::from((p.get() + 1) as u64);
        TermirialExpr {
            n,
            p,
            value: termirial_p(n, p),
            binomial_form: (top, bottom),
        }
    }
}

/// Both sides of `(n+1)^(p) + n^(p+1) = (n+1)^(p+1)`.
pub fn pascal_check(n: u64, p: Order) -> (Natural, Natural) {
    let lhs = termirial_p(n + 1, p) + termirial_p(n, p.succ());
    let rhs = termirial_p(n + 1, p.succ());
    (lhs, rhs)
}

/// The `p + 2` products `n^(i) * m^(p-i-1)` for `i = -1 ..= p`.
///
/// They sum to `(n+m)^(p)`.
pub fn convolution_terms(n: u64, m: u64, p: Order) -> Vec<Natural> {
    let p = p.get();
    (-1..=p)
        .map(|i| {
            let left = Order(i);
            let right = Order(p - i - 1);
            termirial_p(n, left) * termirial_p(m, right)
        })
        .collect()
}
