use serde::{Deserialize, Serialize};

use super::{FpFormat, Mask, Matrix};
use crate::{Error, Result};

/// One attention head: `d_K × d` query and key maps, `d_V × d` value map and
/// the `d × d_V` output projection.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct Head {
    pub mask: Mask,
    pub wq: Matrix,
    pub wk: Matrix,
    pub wv: Matrix,
    pub wout: Matrix,
}

impl Head {
    pub fn d(&self) -> usize {
        self.wq.cols()
    }

    pub fn check(&self, d: usize) -> Result<()> {
        let (dk, dv) = (self.wq.rows(), self.wv.rows());
        let ok = self.wq.cols() == d
            && self.wk.cols() == d
            && self.wv.cols() == d
            && self.wk.rows() == dk
            && self.wout.rows() == d
            && self.wout.cols() == dv
            && dk > 0;
        if !ok {
            return Err(Error::Dimension(format!(
                "head matrices do not fit d = {d} (Wq {}x{}, Wk {}x{}, Wv {}x{}, Wout {}x{})",
                self.wq.rows(),
                self.wq.cols(),
                self.wk.rows(),
                self.wk.cols(),
                self.wv.rows(),
                self.wv.cols(),
                self.wout.rows(),
                self.wout.cols()
            )));
        }
        if let Mask::Local(0) = self.mask {
            return Err(Error::Dimension("local mask needs k ≥ 1".into()));
        }
        Ok(())
    }
}

/// `W · X` column by column with rounded dot products.
pub fn project(fp: &FpFormat, w: &Matrix, x: &Matrix) -> Result<Matrix> {
    if w.cols() != x.rows() {
        return Err(Error::Dimension(format!(
            "cannot apply a {}x{} map to {} rows",
            w.rows(),
            w.cols(),
            x.rows()
        )));
    }
    let mut out = Matrix::zeros(w.rows(), x.cols());
    for c in 0..x.cols() {
        let col = x.column(c);
        for r in 0..w.rows() {
            out.set(r, c, fp.dot(w.row(r), &col));
        }
    }
    Ok(out)
}

type CachedRow = (Vec<f64>, Vec<f64>, std::ops::Range<usize>, f64);

/// Attention weights `α[n-1][m-1]`, over the columns of `x` as positions
/// `1..=T`.
///
/// Scores are `q_n·k_m / √d_K`; the softmax denominator sums `exp` of the
/// visible scores left to right by increasing `m`. Rows with no visible
/// position are all zero.
pub fn attention_weights(x: &Matrix, head: &Head, fp: &FpFormat) -> Result<Vec<Vec<f64>>> {
    head.check(x.rows())?;
    let q = project(fp, &head.wq, x)?;
    let k = project(fp, &head.wk, x)?;
    let t = x.cols();
    let scale = fp.sqrt(head.wq.rows() as f64);
    let keys: Vec<Vec<f64>> = (0..t).map(|m| k.column(m)).collect();
    let mut alpha = vec![vec![0.0; t]; t];
    // Rows with the same query see the same exp-scores; a global mask also
    // extends the previous row's left-to-right denominator by one term.
    // (query, exp-scores, window, denominator) of the last computed row.
    let mut prev: Option<CachedRow> = None;
    for n in 1..=t {
        let window = head.mask.window(n);
        if window.is_empty() {
            continue;
        }
        let qn = q.column(n - 1);
        let (exps, denom) = match prev.take() {
            Some((pq, mut exps, pw, denom)) if pq == qn => {
                for m in exps.len() + 1..window.end {
                    exps.push(fp.exp(fp.div(fp.dot(&qn, &keys[m - 1]), scale)));
                }
                let denom = if pw.start == window.start && pw.end <= window.end {
                    fp_extend(fp, denom, &exps[pw.end - 1..window.end - 1])
                } else {
                    fp.sum(exps[window.start - 1..window.end - 1].iter().copied())
                };
                (exps, denom)
            }
            _ => {
                let exps: Vec<f64> = (1..window.end)
                    .map(|m| {
                        if m < window.start {
                            0.0
                        } else {
                            fp.exp(fp.div(fp.dot(&qn, &keys[m - 1]), scale))
                        }
                    })
                    .collect();
                let denom = fp.sum(exps[window.start - 1..].iter().copied());
                (exps, denom)
            }
        };
        for m in window.clone() {
            alpha[n - 1][m - 1] = fp.div(exps[m - 1], denom);
        }
        prev = Some((qn, exps, window, denom));
    }
    Ok(alpha)
}

fn fp_extend(fp: &FpFormat, acc: f64, more: &[f64]) -> f64 {
    more.iter().fold(acc, |a, &x| fp.add(a, x))
}

/// Head output `O`, `d_V × T`: column `n` is `Σ_m α_{n,m} v_m`, summed left
/// to right.
pub fn attention_forward(x: &Matrix, head: &Head, fp: &FpFormat) -> Result<Matrix> {
    let alpha = attention_weights(x, head, fp)?;
    let v = project(fp, &head.wv, x)?;
    let mut out = Matrix::zeros(v.rows(), x.cols());
    for (n, row) in alpha.iter().enumerate() {
        for r in 0..v.rows() {
            let vr = v.row(r);
            let acc = head
                .mask
                .window(n + 1)
                .fold(0.0, |acc, m| fp.add(acc, fp.mul(row[m - 1], vr[m - 1])));
            out.set(r, n, acc);
        }
    }
    Ok(out)
}

/// `Σ_h W^h O^h`, accumulated in head order.
pub fn multi_head(x: &Matrix, heads: &[Head], fp: &FpFormat) -> Result<Matrix> {
    let mut acc = Matrix::zeros(x.rows(), x.cols());
    for head in heads {
        let o = attention_forward(x, head, fp)?;
        let p = project(fp, &head.wout, &o)?;
        for r in 0..acc.rows() {
            for c in 0..acc.cols() {
                acc.set(r, c, fp.add(acc.get(r, c), p.get(r, c)));
            }
        }
    }
    Ok(acc)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn m(rows: Vec<Vec<f64>>) -> Matrix {
        Matrix::from_rows(rows).unwrap()
    }

    /// d = 2, d_K = d_V = 1: queries read row 0, keys row 1, values row 0.
    fn head(mask: Mask) -> Head {
        Head {
            mask,
            wq: m(vec![vec![1.0, 0.0]]),
            wk: m(vec![vec![0.0, 1.0]]),
            wv: m(vec![vec![1.0, 0.0]]),
            wout: m(vec![vec![1.0], vec![0.0]]),
        }
    }

    /// Independent, unoptimized evaluation of the same definition.
    fn reference_weights(x: &Matrix, h: &Head, fp: &FpFormat) -> Vec<Vec<f64>> {
        let t = x.cols();
        let scale = fp.sqrt(h.wq.rows() as f64);
        let mut out = vec![vec![0.0; t]; t];
        for n in 1..=t {
            let q: Vec<f64> = (0..h.wq.rows()).map(|r| fp.dot(h.wq.row(r), &x.column(n - 1))).collect();
            let vis: Vec<usize> = (1..=t).filter(|&j| h.mask.allows(n, j)).collect();
            let e: Vec<f64> = vis
                .iter()
                .map(|&j| {
                    let k: Vec<f64> = (0..h.wk.rows()).map(|r| fp.dot(h.wk.row(r), &x.column(j - 1))).collect();
                    fp.exp(fp.div(fp.dot(&q, &k), scale))
                })
                .collect();
            let mut s = 0.0;
            for &v in &e {
                s = fp.add(s, v);
            }
            for (i, &j) in vis.iter().enumerate() {
                out[n - 1][j - 1] = fp.div(e[i], s);
            }
        }
        out
    }

    fn input(t: usize, seed: u64) -> Matrix {
        use rand::{Rng, SeedableRng};
        let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(seed);
        let fp = FpFormat::BINARY32;
        m((0..2)
            .map(|_| (0..t).map(|_| fp.round(rng.gen_range(-3.0..3.0))).collect())
            .collect())
    }

    #[test]
    fn first_position_local_is_zero() {
        let x = m(vec![vec![1.0, 1.0, 1.0], vec![1.0, 0.0, 1.0]]);
        let o = attention_forward(&x, &head(Mask::Local(1)), &FpFormat::BINARY32).unwrap();
        assert_eq!(o.get(0, 0), 0.0);
        let o = attention_forward(&x, &head(Mask::Global), &FpFormat::BINARY32).unwrap();
        assert_eq!(o.get(0, 0), 0.0);
    }

    #[test]
    fn equal_scores_split_evenly() {
        let x = m(vec![vec![1.0, 1.0, 1.0], vec![0.5, 0.5, 0.0]]);
        let a = attention_weights(&x, &head(Mask::Global), &FpFormat::BINARY32).unwrap();
        assert_eq!(a[2][0], 0.5);
        assert_eq!(a[2][1], 0.5);
        assert_eq!(a[2][2], 0.0);
    }

    #[test]
    fn local_two_at_four() {
        let x = input(6, 1);
        let a = attention_weights(&x, &head(Mask::Local(2)), &FpFormat::BINARY32).unwrap();
        for j in 1..=6 {
            assert_eq!(a[3][j - 1] != 0.0, j == 2 || j == 3, "m = {j}");
        }
    }

    #[test]
    fn cached_rows_match_reference() {
        let fps = [FpFormat::BINARY32, FpFormat::new(5, 4).unwrap(), FpFormat::new(4, 3).unwrap()];
        for fp in fps {
            for mask in [Mask::Global, Mask::Local(1), Mask::Local(3)] {
                let h = head(mask);
                for seed in 0..5 {
                    let mut x = input(12, seed);
                    // constant queries exercise the cached path
                    if seed % 2 == 0 {
                        for c in 0..12 {
                            x.set(0, c, 1.0);
                        }
                    }
                    assert_eq!(attention_weights(&x, &h, &fp).unwrap(), reference_weights(&x, &h, &fp));
                }
            }
        }
    }

    #[test]
    fn row_sums_and_causality() {
        let fp = FpFormat::BINARY32;
        for mask in [Mask::Global, Mask::Local(2)] {
            let h = head(mask);
            let x = input(20, 9);
            let a = attention_weights(&x, &h, &fp).unwrap();
            for (n, row) in a.iter().enumerate() {
                let s: f64 = row.iter().sum();
                if n == 0 {
                    assert_eq!(s, 0.0);
                } else {
                    assert!((s - 1.0).abs() <= 20.0 * fp.ulp(1.0), "{s}");
                }
                for (j, &v) in row.iter().enumerate() {
                    if !mask.allows(n + 1, j + 1) {
                        assert_eq!(v, 0.0);
                    }
                }
            }
            let base = attention_forward(&x, &h, &fp).unwrap();
            let mut y = x.clone();
            y.set(0, 15, 2.5);
            y.set(1, 15, -1.0);
            let moved = attention_forward(&y, &h, &fp).unwrap();
            // position 16 sees its own query; everything before it is untouched
            for c in 0..15 {
                assert_eq!(base.get(0, c), moved.get(0, c));
            }
        }
    }

    #[test]
    fn halved_twin_heads() {
        let fp = FpFormat::BINARY32;
        let x = m(vec![vec![1.0, 2.0, 0.5], vec![0.25, 1.0, 4.0]]);
        let one = head(Mask::Global);
        let mut half = one.clone();
        half.wout = m(vec![vec![0.5], vec![0.0]]);
        let a = multi_head(&x, &[one], &fp).unwrap();
        let b = multi_head(&x, &[half.clone(), half], &fp).unwrap();
        assert_eq!(a, b);
    }

    #[test]
    fn mixed_masks_differ() {
        let fp = FpFormat::BINARY32;
        let x = m(vec![vec![1.0, 2.0, 4.0], vec![1.0, 0.0, 0.0]]);
        let g = multi_head(&x, &[head(Mask::Global)], &fp).unwrap();
        let l = multi_head(&x, &[head(Mask::Local(1))], &fp).unwrap();
        let both = multi_head(&x, &[head(Mask::Global), head(Mask::Local(1))], &fp).unwrap();
        assert_ne!(both, g);
        assert_ne!(both, l);
        assert_ne!(g.get(0, 2), l.get(0, 2));
    }

    #[test]
    fn dimension_errors() {
        let x = m(vec![vec![1.0, 1.0, 1.0]]);
        assert!(matches!(attention_forward(&x, &head(Mask::Global), &FpFormat::BINARY32), Err(Error::Dimension(_))));
    }
}
