use serde::Serialize;

use crate::automata::Dfa;
use crate::logic::{parse_formula, Formula};
use crate::{Alphabet, Error, Result};

pub const BENCHMARK_IDS: [&str; 8] = [
    "ends-a",
    "ends-ab",
    "starts-a",
    "subseq-ab",
    "alt-ab",
    "factor-ab",
    "rdet-poly",
    "dyck-depth-2",
];

/// Smallest fragment among LTL[Y], LTL[P], LTL[Y,P] and LTL[S] defining a
/// benchmark language.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize)]
pub enum FragmentClass {
    #[serde(rename = "LTL[Y]")]
    Yesterday,
    #[serde(rename = "LTL[P]")]
    Past,
    #[serde(rename = "LTL[Y,P]-only")]
    YesterdayPast,
    #[serde(rename = "LTL[S]-only")]
    Since,
}

impl FragmentClass {
    pub fn name(self) -> &'static str {
        match self {
            FragmentClass::Yesterday => "LTL[Y]",
            FragmentClass::Past => "LTL[P]",
            FragmentClass::YesterdayPast => "LTL[Y,P]-only",
            FragmentClass::Since => "LTL[S]-only",
        }
    }

    pub fn definite(self) -> bool {
        self == FragmentClass::Yesterday
    }

    pub fn yptl(self) -> bool {
        self != FragmentClass::Since
    }

    pub fn ltl_p(self) -> bool {
        self == FragmentClass::Past
    }
}

#[derive(Clone, Debug)]
pub struct BenchmarkLanguage {
    pub id: &'static str,
    pub description: &'static str,
    pub alphabet: Alphabet,
    pub dfa: Dfa,
    pub formula: Option<Formula>,
    pub fragment_class: FragmentClass,
}

/// Looks up a registry entry. `ends-with-a` and `starts-with-a` are accepted
/// as aliases.
pub fn benchmark(id: &str) -> Result<BenchmarkLanguage> {
    let ab = || Alphabet::from_chars("ab").expect("valid alphabet");
    let dfa = |rows: Vec<Vec<usize>>, finals: &[usize]| {
        Dfa::new(ab(), rows, 0, finals.iter().copied()).expect("valid registry automaton")
    };
    let (id, description, dfa, formula, class) = match id {
        "ends-a" | "ends-with-a" => (
            "ends-a",
            "Σ*a",
            dfa(vec![vec![1, 0], vec![1, 0]], &[1]),
            Some("Y a"),
            FragmentClass::Yesterday,
        ),
        "ends-ab" => (
            "ends-ab",
            "Σ*ab",
            dfa(vec![vec![1, 0], vec![1, 2], vec![1, 0]], &[2]),
            Some("Y (b & Y a)"),
            FragmentClass::Yesterday,
        ),
        "starts-a" | "starts-with-a" => (
            "starts-a",
            "aΣ*",
            dfa(vec![vec![1, 2], vec![1, 1], vec![2, 2]], &[1]),
            Some("P (a & !P true)"),
            FragmentClass::Past,
        ),
        "subseq-ab" => (
            "subseq-ab",
            "Σ*aΣ*bΣ*",
            dfa(vec![vec![1, 0], vec![1, 2], vec![2, 2]], &[2]),
            Some("P (b & P a)"),
            FragmentClass::Past,
        ),
        "alt-ab" => (
            "alt-ab",
            "(ab)*",
            dfa(vec![vec![1, 2], vec![2, 0], vec![2, 2]], &[0]),
            Some("!P true | (P (a & !P true) & Y b & !P (a & Y a) & !P (b & Y b))"),
            FragmentClass::YesterdayPast,
        ),
        "factor-ab" => {
            // Over {a,b} this coincides with Σ*aΣ*bΣ*, which is LTL[P]-definable;
            // the third letter keeps the two benchmark classes apart.
            let abc = Alphabet::from_chars("abc").expect("valid alphabet");
            let d = Dfa::new(abc.clone(), vec![vec![1, 0, 0], vec![1, 2, 0], vec![2, 2, 2]], 0, [2])
                .expect("valid registry automaton");
            let f = parse_formula("P (b & Y a)", &abc).expect("valid registry formula");
            return Ok(BenchmarkLanguage {
                id: "factor-ab",
                description: "Σ*abΣ* over {a,b,c}",
                alphabet: abc,
                dfa: d,
                formula: Some(f),
                fragment_class: FragmentClass::YesterdayPast,
            });
        }
        "rdet-poly" => {
            let abcd = Alphabet::from_chars("abcd").expect("valid alphabet");
            // 0: in {a,b,d}*, 1: after a candidate `a` (prefix or suffix),
            // 2: committed to {c,d}*, 3: sink
            let d = Dfa::new(
                abcd.clone(),
                vec![vec![1, 0, 3, 0], vec![1, 0, 2, 1], vec![3, 3, 2, 2], vec![3, 3, 3, 3]],
                0,
                [1, 2],
            )
            .expect("valid registry automaton");
            let f = parse_formula("(c | d) S (a & !P c)", &abcd).expect("valid registry formula");
            return Ok(BenchmarkLanguage {
                id: "rdet-poly",
                description: "{a,b,d}*a{c,d}*",
                alphabet: abcd,
                dfa: d,
                formula: Some(f),
                fragment_class: FragmentClass::Since,
            });
        }
        "dyck-depth-2" => (
            "dyck-depth-2",
            "bounded Dyck, nesting depth ≤ 2",
            dfa(vec![vec![1, 3], vec![2, 0], vec![3, 1], vec![3, 3]], &[0]),
            None,
            FragmentClass::Since,
        ),
        other => return Err(Error::UnknownBenchmark(other.to_owned())),
    };
    let alphabet = ab();
    let formula = formula.map(|src| parse_formula(src, &alphabet).expect("valid registry formula"));
    Ok(BenchmarkLanguage {
        id,
        description,
        alphabet,
        dfa,
        formula,
        fragment_class: class,
    })
}

pub fn benchmarks() -> Vec<BenchmarkLanguage> {
    BENCHMARK_IDS
        .iter()
        .map(|id| benchmark(id).expect("registry ids resolve"))
        .collect()
}
