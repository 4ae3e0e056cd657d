use serde::{Deserialize, Serialize};

use super::{multi_head, project, FpFormat, Head, Matrix, Num};
use crate::{Alphabet, Error, Result};

/// Boolean expression over thresholded channels of a single column.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(tag = "op", rename_all = "lowercase")]
pub enum GateExpr {
    Const { value: bool },
    /// `x[channel] > threshold`.
    Channel { channel: usize, threshold: Num },
    Not { arg: Box<GateExpr> },
    And { args: Vec<GateExpr> },
    Or { args: Vec<GateExpr> },
}

impl GateExpr {
    pub fn eval(&self, col: &[f64]) -> bool {
        match self {
            GateExpr::Const { value } => *value,
            GateExpr::Channel { channel, threshold } => col[*channel] > threshold.0,
            GateExpr::Not { arg } => !arg.eval(col),
            GateExpr::And { args } => args.iter().all(|a| a.eval(col)),
            GateExpr::Or { args } => args.iter().any(|a| a.eval(col)),
        }
    }

    fn max_channel(&self) -> Option<usize> {
        match self {
            GateExpr::Const { .. } => None,
            GateExpr::Channel { channel, .. } => Some(*channel),
            GateExpr::Not { arg } => arg.max_channel(),
            GateExpr::And { args } | GateExpr::Or { args } => args.iter().filter_map(Self::max_channel).max(),
        }
    }
}

/// Writes `expr(column)` as 0/1 into `target`; every other output channel is 0.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct Gate {
    pub target: usize,
    pub expr: GateExpr,
}

/// Position-wise feed-forward map.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(tag = "type", rename_all = "lowercase")]
pub enum Ffn {
    /// Exact Boolean gates; inputs are the layer's post-attention column.
    Gates { gates: Vec<Gate> },
    /// `W2 · relu(W1 · x + b1) + b2`.
    Mlp { w1: Matrix, b1: Vec<Num>, w2: Matrix, b2: Vec<Num> },
}

impl Ffn {
    fn apply(&self, fp: &FpFormat, y: &Matrix) -> Result<Matrix> {
        match self {
            Ffn::Gates { gates } => {
                let mut out = Matrix::zeros(y.rows(), y.cols());
                for c in 0..y.cols() {
                    let col = y.column(c);
                    for g in gates {
                        out.set(g.target, c, if g.expr.eval(&col) { 1.0 } else { 0.0 });
                    }
                }
                Ok(out)
            }
            Ffn::Mlp { w1, b1, w2, b2 } => {
                let mut h = project(fp, w1, y)?;
                for r in 0..h.rows() {
                    for c in 0..h.cols() {
                        h.set(r, c, fp.add(h.get(r, c), b1[r].0).max(0.0));
                    }
                }
                let mut out = project(fp, w2, &h)?;
                for r in 0..out.rows() {
                    for c in 0..out.cols() {
                        out.set(r, c, fp.add(out.get(r, c), b2[r].0));
                    }
                }
                Ok(out)
            }
        }
    }

    fn check(&self, d: usize) -> Result<()> {
        match self {
            Ffn::Gates { gates } => {
                for g in gates {
                    if g.target >= d || g.expr.max_channel().is_some_and(|c| c >= d) {
                        return Err(Error::Dimension(format!("gate for channel {} reads or writes beyond d = {d}", g.target)));
                    }
                }
            }
            Ffn::Mlp { w1, b1, w2, b2 } => {
                if w1.cols() != d || b1.len() != w1.rows() || w2.cols() != w1.rows() || w2.rows() != d || b2.len() != d {
                    return Err(Error::Dimension("MLP shapes do not fit".into()));
                }
            }
        }
        Ok(())
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Default, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum LnMode {
    #[default]
    Identity,
    /// Per-column `(x − mean) / √(var + 1e−5)`, no affine terms.
    Standard,
}

pub const LN_EPS: f64 = 1e-5;

impl LnMode {
    fn apply(self, fp: &FpFormat, x: Matrix) -> Matrix {
        match self {
            LnMode::Identity => x,
            LnMode::Standard => {
                let d = x.rows() as f64;
                let eps = fp.round(LN_EPS);
                let mut out = x.clone();
                for c in 0..x.cols() {
                    let col = x.column(c);
                    let mean = fp.div(fp.sum(col.iter().copied()), d);
                    let centered: Vec<f64> = col.iter().map(|&v| fp.sub(v, mean)).collect();
                    let var = fp.div(fp.sum(centered.iter().map(|&v| fp.mul(v, v))), d);
                    let sd = fp.sqrt(fp.add(var, eps));
                    for (r, &v) in centered.iter().enumerate() {
                        out.set(r, c, fp.div(v, sd));
                    }
                }
                out
            }
        }
    }
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct Layer {
    pub heads: Vec<Head>,
    pub ffn: Ffn,
    #[serde(default)]
    pub ln_mode: LnMode,
}

/// Reads the EOS column: accept iff `(x[channel] > threshold) == accept_above`.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct Classifier {
    pub channel: usize,
    pub threshold: Num,
    pub accept_above: bool,
}

/// Token embeddings: one vector per alphabet symbol plus one for EOS.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct Encoder {
    pub tokens: Vec<Vec<Num>>,
    pub eos: Vec<Num>,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct TransformerModel {
    pub format: FpFormat,
    pub alphabet: Alphabet,
    pub d: usize,
    pub encoder: Encoder,
    pub layers: Vec<Layer>,
    pub classifier: Classifier,
}

/// Stream after each half-layer.
#[derive(Clone, Debug)]
pub struct LayerTrace {
    pub after_attention: Matrix,
    pub after_ffn: Matrix,
}

#[derive(Clone, Debug)]
pub struct Forward {
    pub input: Matrix,
    pub layers: Vec<LayerTrace>,
    pub accepted: bool,
}

impl TransformerModel {
    /// Checks shapes, channel indices and that every parameter is a value of
    /// the model's format.
    pub fn validate(&self) -> Result<()> {
        let fp = &self.format;
        let dim = |what: &str| Err(Error::Dimension(what.to_owned()));
        if self.encoder.tokens.len() != self.alphabet.len() {
            return dim("encoder needs one vector per token");
        }
        if self.encoder.tokens.iter().chain([&self.encoder.eos]).any(|v| v.len() != self.d) {
            return dim("encoder vectors must have length d");
        }
        if self.classifier.channel >= self.d {
            return dim("classifier channel out of range");
        }
        let mut values: Vec<f64> = self.encoder.tokens.iter().flatten().chain(&self.encoder.eos).map(|n| n.0).collect();
        for layer in &self.layers {
            for h in &layer.heads {
                h.check(self.d)?;
                for m in [&h.wq, &h.wk, &h.wv, &h.wout] {
                    values.extend(m.values());
                }
            }
            layer.ffn.check(self.d)?;
            if let Ffn::Mlp { w1, b1, w2, b2 } = &layer.ffn {
                values.extend(w1.values().iter().chain(w2.values()));
                values.extend(b1.iter().chain(b2).map(|n| n.0));
            }
        }
        if let Some(v) = values.into_iter().find(|&v| !fp.contains(v)) {
            return Err(Error::Format(format!("parameter {v} is not a value of format {fp}")));
        }
        Ok(())
    }

    pub fn from_json_str(text: &str) -> Result<Self> {
        let m: TransformerModel = serde_json::from_str(text)?;
        m.validate()?;
        Ok(m)
    }

    /// `X⁰`: encoder columns for `w` followed by EOS.
    pub fn encode(&self, w: &[usize]) -> Result<Matrix> {
        let mut x = Matrix::zeros(self.d, w.len() + 1);
        for (c, &s) in w.iter().enumerate() {
            let v = self
                .encoder
                .tokens
                .get(s)
                .ok_or_else(|| Error::UnknownToken(format!("symbol #{s}")))?;
            x.set_column(c, &v.iter().map(|n| n.0).collect::<Vec<_>>());
        }
        x.set_column(w.len(), &self.encoder.eos.iter().map(|n| n.0).collect::<Vec<_>>());
        Ok(x)
    }

    /// Runs the layers `Y = LN(X + att(X))`, `X' = LN(Y + FFN(Y))` and reads
    /// the classifier at the EOS column.
    pub fn forward(&self, w: &[usize], fp: &FpFormat) -> Result<Forward> {
        let input = self.encode(w)?;
        let mut x = input.clone();
        let mut layers = Vec::with_capacity(self.layers.len());
        for layer in &self.layers {
            let att = multi_head(&x, &layer.heads, fp)?;
            let y = layer.ln_mode.apply(fp, add(fp, &x, &att));
            let f = layer.ffn.apply(fp, &y)?;
            let z = layer.ln_mode.apply(fp, add(fp, &y, &f));
            layers.push(LayerTrace {
                after_attention: y,
                after_ffn: z.clone(),
            });
            x = z;
        }
        let c = &self.classifier;
        let v = x.get(c.channel, x.cols() - 1);
        Ok(Forward {
            input,
            layers,
            accepted: (v > c.threshold.0) == c.accept_above,
        })
    }

    pub fn run(&self, w: &[usize]) -> Result<bool> {
        model_run(self, w, &self.format)
    }

    pub fn run_str(&self, text: &str) -> Result<bool> {
        self.run(&self.alphabet.parse_word(text)?)
    }
}

pub fn model_run(model: &TransformerModel, w: &[usize], fp: &FpFormat) -> Result<bool> {
    Ok(model.forward(w, fp)?.accepted)
}

fn add(fp: &FpFormat, a: &Matrix, b: &Matrix) -> Matrix {
    let mut out = a.clone();
    for r in 0..a.rows() {
        for c in 0..a.cols() {
            out.set(r, c, fp.add(a.get(r, c), b.get(r, c)));
        }
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::attention::Mask;

    fn m(rows: Vec<Vec<f64>>) -> Matrix {
        Matrix::from_rows(rows).unwrap()
    }

    fn nums(v: &[f64]) -> Vec<Num> {
        v.iter().map(|&x| Num(x)).collect()
    }

    /// Hand-built recognizer of Σ*a over {a,b}: channels [const, a, scratch, out].
    fn ends_a() -> TransformerModel {
        let head = Head {
            mask: Mask::Local(1),
            wq: m(vec![vec![1.0, 0.0, 0.0, 0.0]]),
            wk: m(vec![vec![0.0, 20.0, 0.0, 0.0]]),
            wv: m(vec![vec![0.0, 1.0, 0.0, 0.0]]),
            wout: m(vec![vec![0.0], vec![0.0], vec![1.0], vec![0.0]]),
        };
        TransformerModel {
            format: FpFormat::BINARY32,
            alphabet: Alphabet::from_chars("ab").unwrap(),
            d: 4,
            encoder: Encoder {
                tokens: vec![nums(&[1.0, 1.0, 0.0, 0.0]), nums(&[1.0, 0.0, 0.0, 0.0])],
                eos: nums(&[1.0, 0.0, 0.0, 0.0]),
            },
            layers: vec![Layer {
                heads: vec![head],
                ffn: Ffn::Gates {
                    gates: vec![Gate {
                        target: 3,
                        expr: GateExpr::Channel { channel: 2, threshold: Num(0.5) },
                    }],
                },
                ln_mode: LnMode::Identity,
            }],
            classifier: Classifier { channel: 3, threshold: Num(0.5), accept_above: true },
        }
    }

    #[test]
    fn hand_built_model_runs() {
        let model = ends_a();
        model.validate().unwrap();
        for (s, want) in [("", false), ("a", true), ("ba", true), ("ab", false), ("bbba", true)] {
            assert_eq!(model.run_str(s).unwrap(), want, "{s}");
        }
    }

    #[test]
    fn json_round_trip_is_exact() {
        let model = ends_a();
        let j = serde_json::to_string(&model).unwrap();
        assert!(j.contains(r#""threshold":"0.5""#));
        let back = TransformerModel::from_json_str(&j).unwrap();
        assert_eq!(back, model);
    }

    #[test]
    fn validation_rejects_off_format_values() {
        let mut model = ends_a();
        model.format = FpFormat::new(4, 3).unwrap();
        // 20 is not representable with 3 mantissa bits? 20 = 1.25 * 16: it is.
        model.validate().unwrap();
        model.layers[0].heads[0].wk.set(0, 1, 0.1);
        assert!(matches!(model.validate(), Err(Error::Format(_))));
        let mut model = ends_a();
        model.classifier.channel = 9;
        assert!(matches!(model.validate(), Err(Error::Dimension(_))));
    }

    #[test]
    fn standard_ln_normalizes_columns() {
        let fp = FpFormat::BINARY32;
        let x = m(vec![vec![1.0, 0.0], vec![3.0, 0.0]]);
        let y = LnMode::Standard.apply(&fp, x);
        assert!((y.get(0, 0) + 1.0).abs() < 1e-5);
        assert!((y.get(1, 0) - 1.0).abs() < 1e-5);
        assert_eq!(y.get(0, 1), 0.0);
    }

    #[test]
    fn mlp_ffn() {
        let fp = FpFormat::BINARY32;
        let ffn = Ffn::Mlp {
            w1: m(vec![vec![1.0, -1.0]]),
            b1: nums(&[0.0]),
            w2: m(vec![vec![0.0], vec![2.0]]),
            b2: nums(&[0.0, 0.5]),
        };
        ffn.check(2).unwrap();
        let out = ffn.apply(&fp, &m(vec![vec![3.0, 1.0], vec![1.0, 3.0]])).unwrap();
        assert_eq!(out.to_rows(), vec![vec![0.0, 0.0], vec![4.5, 0.5]]);
    }

    #[test]
    fn unknown_symbol_is_rejected() {
        assert!(matches!(ends_a().run(&[0, 2]), Err(Error::UnknownToken(_))));
        assert!(ends_a().run_str("abc").is_err());
    }
}
