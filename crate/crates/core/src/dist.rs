use num_bigint::BigInt;
use num_rational::BigRational;

use crate::prob::Probability;
use crate::validate::Violation;

/// Explicit finite distribution: `(mass, configuration)` atoms.
///
/// The stored atom order is the canonical order used by inverse-CDF sampling.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct FiniteSupportDistribution<C> {
    atoms: Vec<(Probability, C)>,
}

impl<C> FiniteSupportDistribution<C> {
    pub fn new(atoms: Vec<(Probability, C)>) -> Self {
        FiniteSupportDistribution { atoms }
    }

    pub fn point_mass(c: C) -> Self {
        FiniteSupportDistribution {
            atoms: vec![(Probability::one(), c)],
        }
    }

    pub fn atoms(&self) -> &[(Probability, C)] {
        &self.atoms
    }

    pub fn len(&self) -> usize {
        self.atoms.len()
    }

    pub fn is_empty(&self) -> bool {
        self.atoms.is_empty()
    }

    pub fn iter(&self) -> impl Iterator<Item = (&Probability, &C)> {
        self.atoms.iter().map(|(p, c)| (p, c))
    }

    pub fn map<D>(&self, mut f: impl FnMut(&C) -> D) -> FiniteSupportDistribution<D> {
        FiniteSupportDistribution {
            atoms: self.atoms.iter().map(|(p, c)| (p.clone(), f(c))).collect(),
        }
    }

    pub fn try_map<D, E>(
        &self,
        mut f: impl FnMut(&C) -> Result<D, E>,
    ) -> Result<FiniteSupportDistribution<D>, E> {
        let atoms = self
            .atoms
            .iter()
            .map(|(p, c)| Ok((p.clone(), f(c)?)))
            .collect::<Result<_, E>>()?;
        Ok(FiniteSupportDistribution { atoms })
    }

    pub fn total_mass(&self) -> Probability {
        self.atoms.iter().map(|(p, _)| p).sum()
    }

    /// Cumulative masses scaled by `2^bits` for exact inverse-CDF lookup.
    pub fn sampler(&self, bits: u32) -> AtomSampler {
        let scale = BigRational::from_integer(BigInt::from(1u8) << bits);
        let mut acc = BigRational::from_integer(BigInt::from(0u8));
        let cumulative = self
            .atoms
            .iter()
            .map(|(p, _)| {
                acc += p.ratio();
                &acc * &scale
            })
            .collect();
        AtomSampler { cumulative }
    }
}

impl<C: PartialEq> FiniteSupportDistribution<C> {
    /// Sum-to-one, positive masses, distinct configurations. Configuration
    /// specific checks are the caller's job.
    pub fn violations(&self) -> Vec<Violation> {
        let mut out = Vec::new();
        if self.atoms.is_empty() {
            out.push(Violation::new("", "distribution has no atoms"));
            return out;
        }
        for (i, (p, _)) in self.atoms.iter().enumerate() {
            if !p.is_positive() || !p.is_unit() {
                out.push(Violation::new(format!("atom {i}"), "mass must lie in (0, 1]"));
            }
        }
        let total = self.total_mass();
        if !total.is_one() {
            out.push(Violation::new("", format!("mass sum ≠ 1 (sum is {total})")));
        }
        for i in 0..self.atoms.len() {
            for j in i + 1..self.atoms.len() {
                if self.atoms[i].1 == self.atoms[j].1 {
                    out.push(Violation::new(format!("atoms {i}, {j}"), "duplicate configuration"));
                }
            }
        }
        out
    }
}

/// Inverse-CDF lookup table built by [`FiniteSupportDistribution::sampler`].
#[derive(Clone, Debug)]
pub struct AtomSampler {
    cumulative: Vec<BigRational>,
}

impl AtomSampler {
    /// Index of the first atom whose scaled cumulative mass exceeds `draw`.
    /// `draw` must be below `2^bits`.
    pub fn pick(&self, draw: u64) -> usize {
        let d = BigRational::from_integer(BigInt::from(draw));
        let i = self.cumulative.partition_point(|c| *c <= d);
        i.min(self.cumulative.len().saturating_sub(1))
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn p(s: &str) -> Probability {
        Probability::parse(s).unwrap()
    }

    #[test]
    fn sum_not_one_flagged() {
        let d = FiniteSupportDistribution::new(vec![(p("1/2"), 'a'), (p("1/3"), 'b')]);
        let v = d.violations();
        assert_eq!(v.len(), 1);
        assert!(v[0].rule.starts_with("mass sum ≠ 1"));
    }

    #[test]
    fn zero_mass_and_duplicates_flagged() {
        let d = FiniteSupportDistribution::new(vec![(p("0"), 'a'), (p("1"), 'a')]);
        assert_eq!(d.violations().len(), 2);
    }

    #[test]
    fn inverse_cdf_over_canonical_order() {
        let d = FiniteSupportDistribution::new(vec![(p("1/4"), 'a'), (p("1/2"), 'b'), (p("1/4"), 'c')]);
        let s = d.sampler(2);
        assert_eq!(s.pick(0), 0);
        assert_eq!(s.pick(1), 1);
        assert_eq!(s.pick(2), 1);
        assert_eq!(s.pick(3), 2);
    }
}
