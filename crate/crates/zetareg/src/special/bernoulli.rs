//! Exact Bernoulli numbers and the derived floating-point coefficient tables
//! feeding every Euler-Maclaurin and Stirling expansion in the crate.

use std::sync::OnceLock;

use num::bigint::BigInt;
use num::rational::BigRational;
use num::traits::{One, ToPrimitive, Zero};

use crate::error::{Error, Result};

/// Largest exposed even index is 2 * J_MAX.
pub const J_MAX: usize = 64;

/// Exact Bernoulli numbers B_0 .. B_{2 J_MAX} under the convention B_1 = -1/2.
#[derive(Debug, Clone)]
pub struct BernoulliTable {
    values: Vec<BigRational>,
}

impl BernoulliTable {
    /// Builds the table from the defining recurrence
    /// sum_{j=0}^{n} C(n+1, j) B_j = 0, i.e.
    /// B_n = -1/(n+1) * sum_{j<n} C(n+1, j) B_j, exactly in rational arithmetic.
    pub fn new(j_max: usize) -> Self {
        let count = 2 * j_max + 1;
        let mut values: Vec<BigRational> = Vec::with_capacity(count);
        values.push(BigRational::one());
        for n in 1..count {
            // binomials C(n+1, j) built incrementally
            let mut binom = BigInt::one();
            let mut acc = BigRational::zero();
            for (j, b) in values.iter().enumerate() {
                acc += BigRational::from_integer(binom.clone()) * b;
                binom = binom * BigInt::from(n + 1 - j) / BigInt::from(j + 1);
            }
            let n1 = BigRational::from_integer(BigInt::from(n + 1));
            values.push(-acc / n1);
        }
        Self { values }
    }

    pub fn j_max(&self) -> usize {
        (self.values.len() - 1) / 2
    }

    /// B_n as an exact rational.
    pub fn get(&self, n: usize) -> Result<&BigRational> {
        self.values.get(n).ok_or(Error::Capacity {
            what: "Bernoulli index",
            limit: self.values.len() - 1,
            got: n,
        })
    }

    /// B_{2j} as an exact rational, 1 <= j <= j_max.
    pub fn even(&self, j: usize) -> Result<&BigRational> {
        if j == 0 || j > self.j_max() {
            return Err(Error::Capacity {
                what: "even Bernoulli index j",
                limit: self.j_max(),
                got: j,
            });
        }
        self.get(2 * j)
    }
}

/// Shared table and the f64 coefficient caches derived from it.
struct Tables {
    table: BernoulliTable,
    /// B_{2j} as f64, index j.
    even_f64: Vec<f64>,
    /// B_{2j} / (2j)!, index j; the Euler-Maclaurin weights.
    em_weight: Vec<f64>,
    /// B_{2j} / ((2j)(2j-1)), index j; the Stirling log-gamma coefficients.
    stirling: Vec<f64>,
    /// B_{2j} / (2j), index j; the digamma asymptotic coefficients.
    digamma: Vec<f64>,
}

fn tables() -> &'static Tables {
    static TABLES: OnceLock<Tables> = OnceLock::new();
    TABLES.get_or_init(|| {
        let table = BernoulliTable::new(J_MAX);
        let mut even_f64 = vec![0.0];
        let mut em_weight = vec![0.0];
        let mut stirling = vec![0.0];
        let mut digamma = vec![0.0];
        let mut fact = BigRational::one(); // (2j)!
        for j in 1..=J_MAX {
            let b = table.even(j).expect("index within freshly built table");
            let two_j = 2 * j;
            fact *= BigRational::from_integer(BigInt::from(two_j - 1));
            fact *= BigRational::from_integer(BigInt::from(two_j));
            even_f64.push(rational_to_f64(b));
            em_weight.push(rational_to_f64(&(b / &fact)));
            let den = BigRational::from_integer(BigInt::from(two_j * (two_j - 1)));
            stirling.push(rational_to_f64(&(b / den)));
            let den = BigRational::from_integer(BigInt::from(two_j));
            digamma.push(rational_to_f64(&(b / den)));
        }
        Tables {
            table,
            even_f64,
            em_weight,
            stirling,
            digamma,
        }
    })
}

fn rational_to_f64(r: &BigRational) -> f64 {
    r.to_f64().expect("Bernoulli ratio representable in f64")
}

/// B_{2j}, exact, under the convention B_2 = 1/6 (B_1 = -1/2 internally).
pub fn bernoulli_even(j: usize) -> Result<BigRational> {
    tables().table.even(j).cloned()
}

/// B_{2j} as f64. Valid for 1 <= j <= J_MAX.
pub fn bernoulli_even_f64(j: usize) -> Result<f64> {
    tables()
        .even_f64
        .get(j)
        .copied()
        .filter(|_| j >= 1)
        .ok_or(Error::Capacity {
            what: "even Bernoulli index j",
            limit: J_MAX,
            got: j,
        })
}

/// B_{2j} / (2j)! as f64 (Euler-Maclaurin weight), 1 <= j <= J_MAX.
pub(crate) fn em_weight(j: usize) -> f64 {
    tables().em_weight[j]
}

/// B_{2j} / ((2j)(2j-1)) as f64 (Stirling series coefficient), 1 <= j <= J_MAX.
pub(crate) fn stirling_coeff(j: usize) -> f64 {
    tables().stirling[j]
}

/// B_{2j} / (2j) as f64 (digamma asymptotic coefficient), 1 <= j <= J_MAX.
pub(crate) fn digamma_coeff(j: usize) -> f64 {
    tables().digamma[j]
}

/// Access to the shared exact table.
pub fn shared_table() -> &'static BernoulliTable {
    &tables().table
}
