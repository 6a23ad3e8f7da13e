use num_rational::Rational64;
use num_traits::One;

use crate::error::{Error, Result};
use crate::potential::{FourierMode, ModeVector, Orientation, Transform, TrigPotential};

use super::{hbar_1d_exact, hbar_numeric, SolverConfig};

/// A potential acting on a subset of the coordinates. The full potential
/// contains `potential(x_block / scaling)`; the scaling does not change `H̄`
/// and is carried only so that the realized block can be reconstructed.
#[derive(Debug, Clone, PartialEq)]
pub struct SeparableBlock {
    pub coords: Vec<usize>,
    pub potential: TrigPotential,
    pub scaling: Rational64,
}

impl SeparableBlock {
    pub fn new(coords: Vec<usize>, potential: TrigPotential) -> Self {
        Self {
            coords,
            potential,
            scaling: Rational64::one(),
        }
    }

    /// The block as it appears inside the full potential.
    pub fn realized(&self) -> Result<TrigPotential> {
        let t = Transform::new(
            self.scaling,
            vec![0.0; self.potential.dim()],
            Orientation::Preserving,
        )?;
        self.potential.transform(&t)
    }
}

fn check_partition(blocks: &[SeparableBlock], dim: usize) -> Result<()> {
    let mut seen = vec![false; dim];
    for b in blocks {
        if b.coords.len() != b.potential.dim() {
            return Err(Error::InvalidBlocks(format!(
                "block on {:?} carries a {}-dimensional potential",
                b.coords,
                b.potential.dim()
            )));
        }
        for &c in &b.coords {
            if c >= dim {
                return Err(Error::InvalidBlocks(format!("coordinate {c} out of range")));
            }
            if seen[c] {
                return Err(Error::InvalidBlocks(format!("coordinate {c} is in two blocks")));
            }
            seen[c] = true;
        }
    }
    if let Some(c) = seen.iter().position(|s| !s) {
        return Err(Error::InvalidBlocks(format!("coordinate {c} is not covered")));
    }
    Ok(())
}

/// `Σ_j H̄_j(p_j)` for a potential that splits into independent blocks.
/// One-dimensional blocks use the quadrature oracle; larger ones the grid
/// solver with `cfg`.
pub fn hbar_separable(blocks: &[SeparableBlock], p: &[f64], cfg: &SolverConfig, quad_tol: f64) -> Result<f64> {
    check_partition(blocks, p.len())?;
    let mut total = 0.0;
    for b in blocks {
        let pb: Vec<f64> = b.coords.iter().map(|&c| p[c]).collect();
        total += if b.potential.mode_count() == 0 {
            0.5 * pb.iter().map(|x| x * x).sum::<f64>() + b.potential.mean()
        } else if pb.len() == 1 {
            hbar_1d_exact(&b.potential, pb[0], quad_tol)?
        } else {
            hbar_numeric(&b.potential, &pb, cfg)?.value
        };
    }
    Ok(total)
}

/// Splits `V` into blocks of coordinates coupled by some mode (connected
/// components of the "appear in the same mode" relation). The mean goes to
/// the first block.
pub fn split_separable(v: &TrigPotential) -> Result<Vec<SeparableBlock>> {
    let n = v.dim();
    let mut parent: Vec<usize> = (0..n).collect();
    fn find(parent: &mut [usize], i: usize) -> usize {
        let mut r = i;
        while parent[r] != r {
            r = parent[r];
        }
        parent[i] = r;
        r
    }
    for m in v.modes() {
        let support: Vec<usize> = (0..n).filter(|&i| m.k.components()[i] != 0).collect();
        for w in support.windows(2) {
            let (a, b) = (find(&mut parent, w[0]), find(&mut parent, w[1]));
            parent[a] = b;
        }
    }
    let mut groups: Vec<Vec<usize>> = Vec::new();
    let mut root_of_group: Vec<usize> = Vec::new();
    for i in 0..n {
        let r = find(&mut parent, i);
        match root_of_group.iter().position(|&x| x == r) {
            Some(g) => groups[g].push(i),
            None => {
                root_of_group.push(r);
                groups.push(vec![i]);
            }
        }
    }
    let mut blocks = Vec::with_capacity(groups.len());
    for (g, coords) in groups.into_iter().enumerate() {
        let modes = v
            .modes()
            .iter()
            .filter(|m| coords.iter().any(|&c| m.k.components()[c] != 0))
            .map(|m| {
                let k = coords.iter().map(|&c| m.k.components()[c]).collect();
                Ok(FourierMode::new(ModeVector::new(k)?, m.amplitude))
            })
            .collect::<Result<Vec<_>>>()?;
        let mean = if g == 0 { v.mean() } else { 0.0 };
        let potential = TrigPotential::new(coords.len(), mean, modes)?;
        blocks.push(SeparableBlock::new(coords, potential));
    }
    Ok(blocks)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn cos1(k: i64, r: f64) -> TrigPotential {
        TrigPotential::from_cosines(1, 0.0, &[(vec![k], r, 0.0)]).unwrap()
    }

    #[test]
    fn sum_of_one_dimensional_oracles() {
        let blocks = vec![
            SeparableBlock::new(vec![0], cos1(1, 1.0)),
            SeparableBlock::new(vec![1], cos1(1, 0.5)),
        ];
        let cfg = SolverConfig::default();
        let p = [2.0, 0.3];
        let got = hbar_separable(&blocks, &p, &cfg, 1e-12).unwrap();
        let want = hbar_1d_exact(&cos1(1, 1.0), 2.0, 1e-12).unwrap() + 0.5;
        assert!((got - want).abs() < 1e-12);
    }

    #[test]
    fn independent_of_scaling() {
        let mut scaled = SeparableBlock::new(vec![0], cos1(1, 1.0));
        scaled.scaling = Rational64::new(1, 2);
        let realized = scaled.realized().unwrap();
        assert_eq!(realized.modes()[0].k.components(), &[2]);
        let cfg = SolverConfig::default();
        let a = hbar_separable(&[SeparableBlock::new(vec![0], realized)], &[1.7], &cfg, 1e-12).unwrap();
        let b = hbar_separable(&[scaled], &[1.7], &cfg, 1e-12).unwrap();
        assert!((a - b).abs() < 1e-9, "{a} vs {b}");
    }

    #[test]
    fn constant_blocks() {
        let blocks = vec![
            SeparableBlock::new(vec![1], TrigPotential::constant(1, 0.2)),
            SeparableBlock::new(vec![0], TrigPotential::constant(1, 0.3)),
        ];
        let v = hbar_separable(&blocks, &[1.0, 2.0], &SolverConfig::default(), 1e-12).unwrap();
        assert!((v - (2.5 + 0.5)).abs() < 1e-15);
    }

    #[test]
    fn partition_errors() {
        let b = SeparableBlock::new(vec![0], cos1(1, 1.0));
        let cfg = SolverConfig::default();
        assert!(matches!(hbar_separable(std::slice::from_ref(&b), &[0.0, 0.0], &cfg, 1e-12), Err(Error::InvalidBlocks(_))));
        assert!(matches!(hbar_separable(&[b.clone(), b], &[0.0], &cfg, 1e-12), Err(Error::InvalidBlocks(_))));
    }

    #[test]
    fn splitting() {
        let v = TrigPotential::from_cosines(
            3,
            0.7,
            &[(vec![1, 0, 1], 1.0, 0.0), (vec![0, 2, 0], 0.5, 0.3), (vec![2, 0, -1], 0.2, 0.0)],
        )
        .unwrap();
        let blocks = split_separable(&v).unwrap();
        assert_eq!(blocks.len(), 2);
        assert_eq!(blocks[0].coords, vec![0, 2]);
        assert_eq!(blocks[0].potential.mode_count(), 2);
        assert_eq!(blocks[0].potential.mean(), 0.7);
        assert_eq!(blocks[1].coords, vec![1]);
        assert_eq!(blocks[1].potential.modes()[0].k.components(), &[2]);
    }
}
