//! Exact Bernoulli numbers, computed once and cached.

use std::sync::{Mutex, OnceLock};

use rug::Rational;

static CACHE: OnceLock<Mutex<Vec<Rational>>> = OnceLock::new();

/// Exact `B_n` (with `B_1 = -1/2`).
pub fn bernoulli(n: usize) -> Rational {
    let cache = CACHE.get_or_init(|| Mutex::new(Vec::new()));
    let mut list = cache.lock().expect("bernoulli cache poisoned");
    if list.len() <= n {
        // Grow in chunks so repeated small extensions stay cheap.
        *list = compute(n.max(2 * list.len()).max(64));
    }
    list[n].clone()
}

/// `B_0 … B_n` via the Akiyama–Tanigawa transform.
fn compute(n: usize) -> Vec<Rational> {
    let mut a: Vec<Rational> = Vec::with_capacity(n + 1);
    let mut out = Vec::with_capacity(n + 1);
    for m in 0..=n {
        a.push(Rational::from((1, m as u64 + 1)));
        for j in (1..=m).rev() {
            let diff = Rational::from(&a[j - 1] - &a[j]);
            a[j - 1] = diff * Rational::from(j as u64);
        }
        out.push(a[0].clone());
    }
    // The transform yields B_1 = +1/2.
    if n >= 1 {
        out[1] = Rational::from((-1, 2));
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn small_values() {
        assert_eq!(bernoulli(0), Rational::from(1));
        assert_eq!(bernoulli(1), Rational::from((-1, 2)));
        assert_eq!(bernoulli(2), Rational::from((1, 6)));
        assert_eq!(bernoulli(4), Rational::from((-1, 30)));
        assert_eq!(bernoulli(6), Rational::from((1, 42)));
        assert_eq!(bernoulli(12), Rational::from((-691, 2730)));
        assert_eq!(bernoulli(20), Rational::from((-174611, 330)));
        assert_eq!(bernoulli(7), Rational::from(0));
    }

    #[test]
    fn grows_on_demand() {
        // B_100 numerator is known to end in ...5369 / 33330
        let b = bernoulli(100);
        assert_eq!(b.denom().to_u32(), Some(33330));
    }
}
