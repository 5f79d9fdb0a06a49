//! Seeded fixture generation.
//!
//! Every random stream is a pure function of `(master_seed, stream, index)`
//! so trials can run in any order or on any number of workers.

use num_bigint::BigInt;
use num_traits::{Signed, Zero};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::interlace::{class_membership, ClassSpec};
use crate::poly::{rat, Polynomial, Rational};

pub fn splitmix64(x: u64) -> u64 {
    let mut z = x.wrapping_add(0x9E37_79B9_7F4A_7C15);
    z = (z ^ (z >> 30)).wrapping_mul(0xBF58_476D_1CE4_E5B9);
    z = (z ^ (z >> 27)).wrapping_mul(0x94D0_49BB_1331_11EB);
    z ^ (z >> 31)
}

pub fn derive_seed(master: u64, stream: u64, index: u64) -> u64 {
    splitmix64(splitmix64(master ^ splitmix64(stream)) ^ index)
}

pub fn trial_rng(master: u64, stream: u64, index: u64) -> ChaCha8Rng {
    ChaCha8Rng::seed_from_u64(derive_seed(master, stream, index))
}

/// Uniform over the rationals in `[lo, hi]` with a denominator drawn
/// uniformly from `1..=max_den` (not necessarily in lowest terms).
pub fn rand_rational<R: Rng + ?Sized>(rng: &mut R, lo: &Rational, hi: &Rational, max_den: u32) -> Rational {
    assert!(lo <= hi && max_den >= 1);
    let den = BigInt::from(rng.gen_range(1..=max_den));
    let a = (lo * Rational::from_integer(den.clone())).ceil().to_integer();
    let b = (hi * Rational::from_integer(den.clone())).floor().to_integer();
    if a > b {
        return lo.clone();
    }
    let span: u64 = (&b - &a).try_into().unwrap_or(u64::MAX - 1);
    let k = rng.gen_range(0..=span);
    Rational::new(a + BigInt::from(k), den)
}

/// A nonzero rational with `|c| ∈ [1/4, 4]` and a random sign.
pub fn rand_unit<R: Rng + ?Sized>(rng: &mut R) -> Rational {
    let c = Rational::new(rng.gen_range(1..=4).into(), rng.gen_range(1..=4).into());
    if rng.gen_bool(0.5) {
        -c
    } else {
        c
    }
}

#[derive(Clone, Debug)]
pub struct FixtureParams {
    /// Roots start in `[-root_range, root_range]`, or `[0, root_range]`
    /// for non-negative classes.
    pub root_range: Rational,
    pub max_jitter: Rational,
    pub max_den: u32,
}

impl Default for FixtureParams {
    fn default() -> Self {
        FixtureParams {
            root_range: rat(5),
            max_jitter: rat(2),
            max_den: 8,
        }
    }
}

/// Roots and leading coefficient of a fixture in `class`, increasing.
///
/// Gaps are the mesh bound (0 when unbounded) plus a jitter that is exactly
/// zero with fixed probability, so boundary cases such as mesh exactly
/// equal to the bound or repeated roots are sampled too.
pub fn gen_fixture_roots<R: Rng + ?Sized>(
    class: &ClassSpec,
    degree: usize,
    params: &FixtureParams,
    rng: &mut R,
) -> (Vec<Rational>, Rational) {
    let lead = rand_unit(rng);
    let lo = if class.require_nonneg_roots {
        Rational::zero()
    } else {
        -params.root_range.clone()
    };
    let bound = class.mesh_bound.clone().unwrap_or_else(Rational::zero);
    let zero_jitter = if bound.is_positive() { 0.125 } else { 0.25 };
    let mut roots = Vec::with_capacity(degree);
    for i in 0..degree {
        let r = if i == 0 {
            rand_rational(rng, &lo, &params.root_range, params.max_den)
        } else {
            let jitter = if rng.gen_bool(zero_jitter) {
                Rational::zero()
            } else {
                rand_rational(rng, &Rational::zero(), &params.max_jitter, params.max_den)
            };
            &roots[i - 1] + &bound + jitter
        };
        roots.push(r);
    }
    (roots, lead)
}

/// A polynomial of exactly `degree` in `class`, verified before return.
pub fn gen_fixture<R: Rng + ?Sized>(class: &ClassSpec, degree: usize, rng: &mut R) -> Polynomial {
    gen_fixture_with(class, degree, &FixtureParams::default(), rng)
}

pub fn gen_fixture_with<R: Rng + ?Sized>(
    class: &ClassSpec,
    degree: usize,
    params: &FixtureParams,
    rng: &mut R,
) -> Polynomial {
    let (roots, lead) = gen_fixture_roots(class, degree, params, rng);
    let p = Polynomial::from_roots(&roots, lead);
    assert!(class_membership(&p, class), "generated fixture {p} is not in {class}");
    p
}

/// Monic polynomial with no real roots: `(x - c)² + s` with `s > 0`.
pub fn rand_irreducible_quadratic<R: Rng + ?Sized>(rng: &mut R) -> Polynomial {
    let c = rand_rational(rng, &rat(-3), &rat(3), 4);
    let s = rand_rational(rng, &Rational::new(1.into(), 4.into()), &rat(4), 4);
    let lin = Polynomial::linear_root(&c);
    &(&lin * &lin) + &Polynomial::constant(s)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::poly::ratio;

    #[test]
    fn deterministic_streams() {
        let class = ClassSpec::hp_plus(rat(1));
        let a = gen_fixture(&class, 4, &mut trial_rng(7, 1, 3));
        let b = gen_fixture(&class, 4, &mut trial_rng(7, 1, 3));
        let c = gen_fixture(&class, 4, &mut trial_rng(7, 1, 4));
        assert_eq!(a, b);
        assert_ne!(a, c);
        assert_ne!(derive_seed(1, 2, 3), derive_seed(1, 3, 2));
    }

    #[test]
    fn degree_zero_is_nonzero_constant() {
        let p = gen_fixture(&ClassSpec::hp_plus(rat(1)), 0, &mut trial_rng(0, 0, 0));
        assert_eq!(p.deg(), Some(0));
    }

    #[test]
    fn rationals_in_range() {
        let mut rng = trial_rng(1, 1, 1);
        for _ in 0..200 {
            let r = rand_rational(&mut rng, &ratio(-1, 3), &ratio(5, 2), 6);
            assert!(r >= ratio(-1, 3) && r <= ratio(5, 2));
        }
    }
}
