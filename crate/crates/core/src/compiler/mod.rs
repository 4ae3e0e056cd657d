//! Formula-to-transformer compilation.
//!
//! Every subformula gets a 0/1 channel; channel 0 is constantly 1. The
//! encoder fills in all temporal-free subformulas directly from the token
//! (EOS makes every atom false). A temporal subformula `g` of operator depth
//! `t` is computed in layer `t` by one head:
//!
//! - the query reads the constant channel and the key is `C ·` the child's
//!   channel, so satisfying predecessors score `C` and the rest `0`;
//! - the value is the child's channel, written to a scratch channel.
//!
//! The head output is exactly 0 when no visible predecessor satisfies the
//! child and at least `e^C / (e^C + N_max)` otherwise. `P`/`Ystar` heads use
//! the global mask, `Y` the 1-local one and `Y^k` the `k`-local one. The
//! layer's FFN thresholds scratch channels at 1/2 and evaluates the Boolean
//! subformulas whose deepest temporal part lives at that layer.

mod verify;

use std::collections::HashMap;

use serde::Serialize;

use crate::attention::{
    Classifier, Encoder, Ffn, FpFormat, Gate, GateExpr, Head, Layer, LnMode, Mask, Matrix, Num,
    TransformerModel,
};
use crate::logic::{evaluate, EvalPoint, Formula};
use crate::{Alphabet, Error, Result};

pub use verify::{verify_compiled, Mismatch, VerifyReport};

#[derive(Clone, Copy, Debug, PartialEq)]
pub struct CompileParams {
    /// Key score of a satisfying position.
    pub score_gain: f64,
    /// Longest input the margin check covers.
    pub max_len: usize,
    pub fp: FpFormat,
    /// Largest admissible model width `d`.
    pub channel_budget: usize,
}

impl Default for CompileParams {
    fn default() -> Self {
        CompileParams {
            score_gain: 20.0,
            max_len: 10_000,
            fp: FpFormat::BINARY32,
            channel_budget: 4096,
        }
    }
}

impl CompileParams {
    /// Fails unless a single satisfying position among `max_len` keeps at
    /// least 3/4 of the attention mass, evaluated in the target format, and
    /// the softmax denominator cannot saturate.
    pub fn check_margin(&self) -> Result<()> {
        let fp = &self.fp;
        let c = self.score_gain;
        if c.is_nan() || c <= 0.0 || fp.round(c) != c {
            return Err(Error::Margin(format!("score gain {c} is not a positive value of {fp}")));
        }
        let ec = fp.exp(c);
        let n = fp.round(self.max_len as f64);
        let share = fp.div(ec, fp.add(ec, n));
        if share < 0.75 {
            return Err(Error::Margin(format!(
                "e^{c} / (e^{c} + {}) = {share} < 3/4 in {fp}",
                self.max_len
            )));
        }
        if fp.mul(ec, n) >= fp.max_finite() {
            return Err(Error::Margin(format!(
                "{} · e^{c} saturates {fp}",
                self.max_len
            )));
        }
        Ok(())
    }
}

/// Channel assignment shared by [`compile`] and the verifier.
#[derive(Clone, Debug)]
pub struct ChannelPlan {
    /// Distinct subformulas, children before parents.
    pub subformulas: Vec<Formula>,
    channel: HashMap<Formula, usize>,
    /// Scratch channel of each temporal subformula.
    scratch: HashMap<Formula, usize>,
    pub width: usize,
}

pub const CONST_CHANNEL: usize = 0;

impl ChannelPlan {
    pub fn new(f: &Formula) -> Self {
        let mut subformulas = Vec::new();
        let mut channel = HashMap::new();
        collect(f, &mut subformulas, &mut channel);
        let mut width = 1 + subformulas.len();
        let mut scratch = HashMap::new();
        for g in subformulas.iter().filter(|g| g.is_temporal()) {
            scratch.insert(g.clone(), width);
            width += 1;
        }
        ChannelPlan {
            subformulas,
            channel,
            scratch,
            width,
        }
    }

    pub fn channel(&self, g: &Formula) -> usize {
        self.channel[g]
    }

    pub fn scratch(&self, g: &Formula) -> Option<usize> {
        self.scratch.get(g).copied()
    }

    /// Scratch channels written by layer `t` (1-based).
    pub fn scratch_at(&self, t: usize) -> Vec<usize> {
        self.subformulas
            .iter()
            .filter(|g| g.is_temporal() && g.operator_depth() == t)
            .map(|g| self.scratch[g])
            .collect()
    }
}

fn collect(f: &Formula, out: &mut Vec<Formula>, seen: &mut HashMap<Formula, usize>) {
    if seen.contains_key(f) {
        return;
    }
    for c in f.children() {
        collect(c, out, seen);
    }
    seen.insert(f.clone(), 1 + out.len());
    out.push(f.clone());
}

/// Builds a model with `max(1, od(f))` layers recognizing `f`'s language on
/// all strings of length at most `params.max_len`.
pub fn compile(f: &Formula, alphabet: &Alphabet, params: &CompileParams) -> Result<TransformerModel> {
    f.check_alphabet(alphabet)?;
    for (op, bad) in [
        ("U", f.any(|g| matches!(g, Formula::Until(..)))),
        ("S", f.any(|g| matches!(g, Formula::Since(..)))),
        ("MOD", f.any(|g| matches!(g, Formula::Mod { .. }))),
    ] {
        if bad {
            return Err(Error::Unsupported(op));
        }
    }
    params.check_margin()?;
    let plan = ChannelPlan::new(f);
    if plan.width > params.channel_budget {
        return Err(Error::ChannelBudget {
            needed: plan.width,
            budget: params.channel_budget,
        });
    }
    let d = plan.width;
    let fp = &params.fp;

    let column = |word: &[usize]| -> Vec<Num> {
        let mut v = vec![Num(0.0); d];
        v[CONST_CHANNEL] = Num(1.0);
        for g in plan.subformulas.iter().filter(|g| g.operator_depth() == 0) {
            if accepts_at_last(g, alphabet, word) {
                v[plan.channel(g)] = Num(1.0);
            }
        }
        v
    };
    let encoder = Encoder {
        tokens: (0..alphabet.len()).map(|a| column(&[a])).collect(),
        eos: column(&[]),
    };

    let depth = f.operator_depth();
    let mut layers = Vec::with_capacity(depth.max(1));
    for t in 1..=depth.max(1) {
        let mut heads = Vec::new();
        let mut gates = Vec::new();
        for g in plan.subformulas.iter().filter(|g| g.operator_depth() == t) {
            if g.is_temporal() {
                let (mask, child) = match g {
                    Formula::Yesterday(c) => (Mask::Local(1), c),
                    Formula::YesterdayWithin(k, c) => (Mask::Local(*k), c),
                    Formula::YesterdayStar(c) | Formula::Past(c) => (Mask::Global, c),
                    _ => unreachable!("S, U rejected above"),
                };
                let s = plan.scratch[g];
                heads.push(head(d, mask, plan.channel(child), s, fp.round(params.score_gain)));
                gates.push(Gate {
                    target: plan.channel(g),
                    expr: threshold(s),
                });
            } else {
                gates.push(Gate {
                    target: plan.channel(g),
                    expr: gate_expr(g, t, &plan),
                });
            }
        }
        layers.push(Layer {
            heads,
            ffn: Ffn::Gates { gates },
            ln_mode: LnMode::Identity,
        });
    }

    let model = TransformerModel {
        format: *fp,
        alphabet: alphabet.clone(),
        d,
        encoder,
        layers,
        classifier: Classifier {
            channel: plan.channel(f),
            threshold: Num(0.5),
            accept_above: true,
        },
    };
    model.validate()?;
    Ok(model)
}

/// Truth of a temporal-free formula at the last position of `word`; for the
/// empty word this is the EOS position, where every atom is false.
fn accepts_at_last(g: &Formula, alphabet: &Alphabet, word: &[usize]) -> bool {
    let at = EvalPoint::new(word, word.len().max(1)).expect("position in range");
    evaluate(g, alphabet, at)
}

fn threshold(channel: usize) -> GateExpr {
    GateExpr::Channel {
        channel,
        threshold: Num(0.5),
    }
}

/// Inlines Boolean connectives computed in the same layer; everything else is
/// read from its channel (or, for this layer's temporal results, its scratch).
fn gate_expr(g: &Formula, t: usize, plan: &ChannelPlan) -> GateExpr {
    let same_layer = g.operator_depth() == t;
    match g {
        Formula::Not(c) if same_layer => GateExpr::Not {
            arg: Box::new(gate_expr(c, t, plan)),
        },
        Formula::And(a, b) if same_layer => GateExpr::And {
            args: vec![gate_expr(a, t, plan), gate_expr(b, t, plan)],
        },
        Formula::Or(a, b) if same_layer => GateExpr::Or {
            args: vec![gate_expr(a, t, plan), gate_expr(b, t, plan)],
        },
        _ if same_layer => threshold(plan.scratch[g]),
        _ => threshold(plan.channel(g)),
    }
}

fn head(d: usize, mask: Mask, child: usize, scratch: usize, gain: f64) -> Head {
    let unit = |len: usize, at: usize, v: f64| {
        let mut row = vec![0.0; len];
        row[at] = v;
        row
    };
    let mut wout = Matrix::zeros(d, 1);
    wout.set(scratch, 0, 1.0);
    Head {
        mask,
        wq: Matrix::from_rows(vec![unit(d, CONST_CHANNEL, 1.0)]).expect("one row"),
        wk: Matrix::from_rows(vec![unit(d, child, gain)]).expect("one row"),
        wv: Matrix::from_rows(vec![unit(d, child, 1.0)]).expect("one row"),
        wout,
    }
}

#[derive(Clone, Debug, Default, PartialEq, Eq, Serialize)]
pub struct MaskCensus {
    pub global_heads: usize,
    /// Window sizes of the local heads, in layer and head order.
    pub local_heads: Vec<usize>,
}

pub fn mask_census(model: &TransformerModel) -> MaskCensus {
    let mut census = MaskCensus::default();
    for h in model.layers.iter().flat_map(|l| &l.heads) {
        match h.mask {
            Mask::Global => census.global_heads += 1,
            Mask::Local(k) => census.local_heads.push(k),
        }
    }
    census
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::logic::{accepts, expand_bounded, parse_formula};

    fn ab() -> Alphabet {
        Alphabet::from_chars("ab").unwrap()
    }

    fn f(src: &str) -> Formula {
        parse_formula(src, &ab()).unwrap()
    }

    fn build(src: &str) -> TransformerModel {
        compile(&f(src), &ab(), &CompileParams::default()).unwrap()
    }

    #[test]
    fn yesterday_a() {
        let m = build("Y a");
        assert_eq!(m.layers.len(), 1);
        assert_eq!(mask_census(&m), MaskCensus { global_heads: 0, local_heads: vec![1] });
        assert!(m.run_str("ba").unwrap());
        assert!(!m.run_str("ab").unwrap());
        for w in ab().words_up_to(12) {
            assert_eq!(m.run(&w).unwrap(), accepts(&f("Y a"), &ab(), &w));
        }
    }

    #[test]
    fn starts_with_a() {
        let m = build("P (a & !P true)");
        assert_eq!(m.layers.len(), 2);
        assert_eq!(mask_census(&m), MaskCensus { global_heads: 2, local_heads: vec![] });
        assert!(!m.run_str("ba").unwrap());
        assert!(m.run_str("abb").unwrap());
    }

    #[test]
    fn factor_ab_is_hybrid() {
        let m = build("P (b & Y a)");
        let c = mask_census(&m);
        assert_eq!(c.global_heads, 1);
        assert_eq!(c.local_heads, vec![1]);
        for w in ab().words_up_to(9) {
            let s = ab().format_word(&w);
            assert_eq!(m.run(&w).unwrap(), s.contains("ab"), "{s}");
        }
    }

    #[test]
    fn census_examples() {
        assert_eq!(mask_census(&build("P a")), MaskCensus { global_heads: 1, local_heads: vec![] });
        assert_eq!(
            mask_census(&build("Y^4 a & P b")),
            MaskCensus { global_heads: 1, local_heads: vec![4] }
        );
    }

    #[test]
    fn constants_and_boolean_only() {
        let top = build("true");
        assert_eq!(top.layers.len(), 1);
        assert!(top.run_str("").unwrap());
        let bot = build("false");
        assert!(!bot.run_str("ab").unwrap());
        // atoms are false at EOS
        assert!(!build("a").run_str("a").unwrap());
        assert!(build("!b").run_str("b").unwrap());
    }

    #[test]
    fn depth_law() {
        let g = f("Y^3 (a & Y b)");
        let p = CompileParams::default();
        assert_eq!(compile(&g, &ab(), &p).unwrap().layers.len(), 2);
        assert_eq!(compile(&expand_bounded(&g), &ab(), &p).unwrap().layers.len(), 4);
    }

    #[test]
    fn rejected_inputs() {
        let p = CompileParams::default();
        assert!(matches!(compile(&f("a S b"), &ab(), &p), Err(Error::Unsupported("S"))));
        assert!(matches!(compile(&f("a U b"), &ab(), &p), Err(Error::Unsupported("U"))));
        assert!(matches!(compile(&f("Y MOD(2,0)"), &ab(), &p), Err(Error::Unsupported("MOD"))));
        let tight = CompileParams { channel_budget: 3, ..p };
        assert!(matches!(compile(&f("Y (a & b)"), &ab(), &tight), Err(Error::ChannelBudget { .. })));
        let weak = CompileParams { score_gain: 2.0, ..p };
        assert!(matches!(compile(&f("Y a"), &ab(), &weak), Err(Error::Margin(_))));
        let tiny = CompileParams { fp: FpFormat::new(4, 3).unwrap(), ..p };
        assert!(matches!(compile(&f("Y a"), &ab(), &tiny), Err(Error::Margin(_))));
    }

    #[test]
    fn shared_subformulas_get_one_channel() {
        let plan = ChannelPlan::new(&f("Y a & P (Y a)"));
        let ya = f("Y a");
        assert_eq!(plan.subformulas.iter().filter(|g| **g == ya).count(), 1);
        assert!(plan.scratch(&ya).is_some());
        assert_eq!(plan.scratch_at(2).len(), 1);
    }
}
