//! Explicit monotone time stepping of `w_t + ½|p + Dw|² + V = 0` on a
//! periodic grid.

use crate::potential::TrigPotential;

use super::Scheme;

/// Outcome of one long-time run.
pub(crate) struct Run {
    /// `−(S(T2) − S(T1)) / (T2 − T1)` where `S` is the grid mean of `w`.
    pub two_horizon: f64,
    /// `−S(T2) / T2`.
    pub single_horizon: f64,
}

struct Grid {
    n: usize,
    dim: usize,
    /// For every row (a line along axis 0), the row offsets of its neighbors
    /// along axes 1.. as `(minus, plus)` pairs.
    row_neighbors: Vec<Vec<(usize, usize)>>,
}

impl Grid {
    fn new(n: usize, dim: usize) -> Self {
        let rows = n.pow(dim as u32 - 1);
        let row_neighbors = (0..rows)
            .map(|r| {
                let mut out = Vec::with_capacity(dim - 1);
                let mut stride = 1;
                for _ in 1..dim {
                    let i = (r / stride) % n;
                    let minus = if i == 0 { r + (n - 1) * stride } else { r - stride };
                    let plus = if i == n - 1 { r - (n - 1) * stride } else { r + stride };
                    out.push((minus * n, plus * n));
                    stride *= n;
                }
                out
            })
            .collect();
        Self {
            n,
            dim,
            row_neighbors,
        }
    }

    fn len(&self) -> usize {
        self.n.pow(self.dim as u32)
    }

    fn sample(&self, v: &TrigPotential) -> Vec<f64> {
        let mut x = vec![0.0; self.dim];
        (0..self.len())
            .map(|idx| {
                let mut rem = idx;
                for xi in x.iter_mut() {
                    *xi = (rem % self.n) as f64 / self.n as f64;
                    rem /= self.n;
                }
                v.eval_unchecked(&x)
            })
            .collect()
    }
}

#[inline]
fn godunov(a: f64, b: f64, p: f64) -> f64 {
    let l = (a + p).max(0.0);
    let r = (b + p).min(0.0);
    0.5 * (l * l).max(r * r)
}

#[inline]
fn lax_friedrichs(a: f64, b: f64, p: f64, alpha: f64) -> f64 {
    let avg = 0.5 * (a + b) + p;
    0.5 * avg * avg - 0.5 * alpha * (b - a)
}

pub(crate) fn run(
    v: &TrigPotential,
    p: &[f64],
    n: usize,
    cfl: f64,
    t2: f64,
    scheme: Scheme,
) -> Run {
    // Lipschitz bound for |p_i + ∂_i w| along the flow.
    let osc = v.oscillation_bound();
    let pn = p.iter().map(|x| x * x).sum::<f64>().sqrt();
    let alpha = pn + (2.0 * osc).sqrt() + 1.0;
    match scheme {
        Scheme::Godunov => evolve(v, p, n, cfl, t2, alpha, godunov),
        Scheme::LaxFriedrichs => evolve(v, p, n, cfl, t2, alpha, |a, b, q| {
            lax_friedrichs(a, b, q, alpha)
        }),
    }
}

fn evolve<F>(v: &TrigPotential, p: &[f64], n: usize, cfl: f64, t2: f64, alpha: f64, flux: F) -> Run
where
    F: Fn(f64, f64, f64) -> f64,
{
    let dim = v.dim();
    let grid = Grid::new(n, dim);
    let vals = grid.sample(v);
    let inv_h = n as f64;

    let dt_max = cfl / (inv_h * alpha * dim as f64);
    let mut steps = (t2 / dt_max).ceil() as usize;
    steps += steps % 2;
    let steps = steps.max(2);
    let dt = t2 / steps as f64;

    let len = grid.len();
    let mut w = vec![0.0; len];
    let mut next = vec![0.0; len];
    let mut ham = vec![0.0; n];
    let mut shift = 0.0;
    let mut shift_t1 = 0.0;

    for step in 1..=steps {
        let mut total = 0.0;
        for (r, neigh) in grid.row_neighbors.iter().enumerate() {
            let base = r * n;
            let row = &w[base..base + n];
            // axis 0, periodic along the row
            let mut prev = row[n - 1];
            for i in 0..n {
                let c = row[i];
                let right = if i + 1 < n { row[i + 1] } else { row[0] };
                ham[i] = flux((c - prev) * inv_h, (right - c) * inv_h, p[0]);
                prev = c;
            }
            for (d, &(mb, pb)) in neigh.iter().enumerate() {
                let below = &w[mb..mb + n];
                let above = &w[pb..pb + n];
                let pd = p[d + 1];
                for (((hm, &c), &lo), &hi) in ham.iter_mut().zip(row).zip(below).zip(above) {
                    *hm += flux((c - lo) * inv_h, (hi - c) * inv_h, pd);
                }
            }
            let out = &mut next[base..base + n];
            for (((o, &c), &hm), &vv) in out.iter_mut().zip(row).zip(&ham).zip(&vals[base..base + n]) {
                let u = c - dt * (hm + vv);
                *o = u;
                total += u;
            }
        }
        let mean = total / len as f64;
        for u in next.iter_mut() {
            *u -= mean;
        }
        shift += mean;
        std::mem::swap(&mut w, &mut next);
        if step == steps / 2 {
            shift_t1 = shift;
        }
    }
    let t1 = 0.5 * t2;
    Run {
        two_horizon: -(shift - shift_t1) / (t2 - t1),
        single_horizon: -shift / t2,
    }
}
