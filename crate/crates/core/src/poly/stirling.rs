//! Stirling number tables, grown on demand and shared process-wide.

use std::sync::{LazyLock, Mutex};

use num_bigint::BigInt;
use num_traits::{One, Zero};

struct Table {
    rows: Vec<Vec<BigInt>>,
    next: fn(&[BigInt], usize) -> Vec<BigInt>,
}

impl Table {
    fn new(next: fn(&[BigInt], usize) -> Vec<BigInt>) -> Self {
        Table {
            rows: vec![vec![BigInt::one()]],
            next,
        }
    }

    fn row(&mut self, n: usize) -> Vec<BigInt> {
        while self.rows.len() <= n {
            let m = self.rows.len() - 1;
            let row = (self.next)(&self.rows[m], m);
            self.rows.push(row);
        }
        self.rows[n].clone()
    }
}

// s(n+1, k) = s(n, k-1) - n s(n, k)
fn first_next(prev: &[BigInt], n: usize) -> Vec<BigInt> {
    let mut row = vec![BigInt::zero(); prev.len() + 1];
    let n = BigInt::from(n);
    for (k, slot) in row.iter_mut().enumerate() {
        if k >= 1 {
            *slot += &prev[k - 1];
        }
        if k < prev.len() {
            *slot -= &n * &prev[k];
        }
    }
    row
}

// S(n+1, k) = k S(n, k) + S(n, k-1)
fn second_next(prev: &[BigInt], _n: usize) -> Vec<BigInt> {
    let mut row = vec![BigInt::zero(); prev.len() + 1];
    for (k, slot) in row.iter_mut().enumerate() {
        if k >= 1 {
            *slot += &prev[k - 1];
        }
        if k < prev.len() {
            *slot += BigInt::from(k) * &prev[k];
        }
    }
    row
}

static FIRST: LazyLock<Mutex<Table>> = LazyLock::new(|| Mutex::new(Table::new(first_next)));
static SECOND: LazyLock<Mutex<Table>> = LazyLock::new(|| Mutex::new(Table::new(second_next)));

/// Signed Stirling numbers of the first kind `s(n, 0..=n)`:
/// `(x)_n = Σ_k s(n, k) x^k`.
pub fn first_kind_row(n: usize) -> Vec<BigInt> {
    FIRST.lock().expect("stirling table poisoned").row(n)
}

/// Stirling numbers of the second kind `S(n, 0..=n)`:
/// `x^n = Σ_k S(n, k) (x)_k`.
pub fn second_kind_row(n: usize) -> Vec<BigInt> {
    SECOND.lock().expect("stirling table poisoned").row(n)
}
