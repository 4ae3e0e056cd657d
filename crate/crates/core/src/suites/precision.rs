use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use super::{check, Check, SuiteOptions};
use crate::attention::{attention_forward, attention_weights, FpFormat, Head, Mask, Matrix};
use crate::Result;

fn probe_head(mask: Mask) -> Head {
    let m = |rows: Vec<Vec<f64>>| Matrix::from_rows(rows).expect("rectangular");
    Head {
        mask,
        wq: m(vec![vec![1.0, 0.0]]),
        wk: m(vec![vec![0.0, 1.0]]),
        wv: m(vec![vec![1.0, 1.0]]),
        wout: m(vec![vec![1.0], vec![0.0]]),
    }
}

pub(crate) fn precision(opts: &SuiteOptions) -> Result<Vec<Check>> {
    let mut checks = Vec::new();
    let tiny = FpFormat::new(4, 3)?;
    let left = tiny.add(tiny.add(8.0, 0.5), 0.5);
    let right = tiny.add(8.0, tiny.add(0.5, 0.5));
    checks.push(check(
        "3-bit mantissa: (8 + 0.5) + 0.5 != 8 + (0.5 + 0.5)",
        left == 8.0 && right == 9.0,
        format!("{left} vs {right}"),
    ));

    let fp = FpFormat::BINARY32;
    let mut rng = ChaCha8Rng::seed_from_u64(opts.seed);
    let t = 40;
    let x = Matrix::from_rows(
        (0..2)
            .map(|_| (0..t).map(|_| fp.round(rng.gen_range(-4.0..4.0))).collect())
            .collect(),
    )?;
    let mut zero_ok = true;
    let mut worst: f64 = 0.0;
    let mut sums_ok = true;
    for mask in [Mask::Global, Mask::Local(1), Mask::Local(2), Mask::Local(4)] {
        let head = probe_head(mask);
        let out = attention_forward(&x, &head, &fp)?;
        zero_ok &= out.get(0, 0) == 0.0 && out.get(0, 0).is_sign_positive();
        let alpha = attention_weights(&x, &head, &fp)?;
        zero_ok &= alpha[0].iter().all(|&a| a == 0.0);
        for (n, row) in alpha.iter().enumerate().skip(1) {
            let terms = mask.window(n + 1).len();
            let s = fp.sum(row.iter().copied());
            let err = (s - 1.0).abs() / fp.ulp(1.0);
            worst = worst.max(err);
            sums_ok &= err <= terms as f64;
        }
    }
    checks.push(check("fully masked rows output exactly zero", zero_ok, "first position, all masks"));
    checks.push(check(
        "attention row sums within one rounding step per term of 1",
        sums_ok,
        format!("worst deviation {worst} ulp"),
    ));

    let mut mismatches = 0;
    for _ in 0..1000 {
        let a: f32 = rng.gen_range(-1e6f32..1e6) * 2f32.powi(rng.gen_range(-40..40));
        let b: f32 = rng.gen_range(-1e6f32..1e6) * 2f32.powi(rng.gen_range(-40..40));
        let (x, y) = (a as f64, b as f64);
        mismatches += usize::from(fp.add(x, y) != (a + b) as f64);
        mismatches += usize::from(fp.mul(x, y) != (a * b) as f64);
        mismatches += usize::from(fp.div(x, y) != (a / b) as f64);
        mismatches += usize::from(fp.sub(x, y) != (a - b) as f64);
    }
    checks.push(check(
        "binary32-like format matches native f32",
        mismatches == 0,
        format!("1000 operand pairs x 4 ops, {mismatches} mismatches"),
    ));
    Ok(checks)
}
