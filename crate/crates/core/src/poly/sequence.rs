//! The triangular correspondence between diagonal eigenvalues `αᵢ` and the
//! expansion coefficients `aᵢ` of `T = Σ aᵢ (x)ᵢ Δⁱ`:
//! `α_j = Σ_{i ≤ j} aᵢ (j)ᵢ`.

use num_traits::{One, Zero};

use super::Rational;

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum SequenceDirection {
    AToAlpha,
    AlphaToA,
}

/// Matching prefixes of both representations of one diagonal operator.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SequencePair {
    pub alpha: Vec<Rational>,
    pub a: Vec<Rational>,
}

impl SequencePair {
    pub fn from_a(a: Vec<Rational>) -> Self {
        let alpha = sequence_convert(&a, SequenceDirection::AToAlpha);
        SequencePair { alpha, a }
    }

    pub fn from_alpha(alpha: Vec<Rational>) -> Self {
        let a = sequence_convert(&alpha, SequenceDirection::AlphaToA);
        SequencePair { alpha, a }
    }
}

// (j)_i for i ≤ j, as row i ↦ (j)_i
fn falling_row(j: usize) -> Vec<Rational> {
    let mut row = Vec::with_capacity(j + 1);
    let mut acc = Rational::one();
    row.push(acc.clone());
    for i in 0..j {
        acc *= Rational::from_integer(((j - i) as i64).into());
        row.push(acc.clone());
    }
    row
}

pub fn sequence_convert(input: &[Rational], direction: SequenceDirection) -> Vec<Rational> {
    match direction {
        SequenceDirection::AToAlpha => (0..input.len())
            .map(|j| {
                falling_row(j)
                    .iter()
                    .zip(input)
                    .fold(Rational::zero(), |acc, (f, a)| acc + f * a)
            })
            .collect(),
        SequenceDirection::AlphaToA => {
            let mut a: Vec<Rational> = Vec::with_capacity(input.len());
            for (j, alpha_j) in input.iter().enumerate() {
                let row = falling_row(j);
                let partial = row
                    .iter()
                    .zip(&a)
                    .fold(Rational::zero(), |acc, (f, ai)| acc + f * ai);
                a.push((alpha_j - partial) / &row[j]);
            }
            a
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::poly::{rat, ratio};

    #[test]
    fn constant_operator() {
        let alpha = sequence_convert(&[rat(5), rat(0), rat(0), rat(0)], SequenceDirection::AToAlpha);
        assert_eq!(alpha, vec![rat(5); 4]);
    }

    #[test]
    fn euler_operator_is_index() {
        let alpha = sequence_convert(
            &[rat(0), rat(1), rat(0), rat(0), rat(0)],
            SequenceDirection::AToAlpha,
        );
        assert_eq!(alpha, (0..5).map(rat).collect::<Vec<_>>());
    }

    #[test]
    fn w_lambda_sequence() {
        let lambda = ratio(7, 3);
        let alpha = sequence_convert(
            &[rat(1), lambda.clone(), rat(0), rat(0)],
            SequenceDirection::AToAlpha,
        );
        for (i, a) in alpha.iter().enumerate() {
            assert_eq!(*a, rat(1) + &lambda * rat(i as i64));
        }
    }

    #[test]
    fn inverse_of_squares() {
        // α_j = j² = (j)_2 + (j)_1
        let alpha: Vec<_> = (0..6).map(|j| rat(j * j)).collect();
        let pair = SequencePair::from_alpha(alpha);
        assert_eq!(pair.a, vec![rat(0), rat(1), rat(1), rat(0), rat(0), rat(0)]);
    }
}
