use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;

use super::{check, Check, SuiteOptions};
use crate::algebra::{
    definite_degree_by_suffixes, find_forbidden_config, is_aperiodic, is_definite,
    is_locally_r_trivial, is_nonpermutational, transition_semigroup_with_budget, Verdict,
};
use crate::automata::random::random_dfa;
use crate::automata::{minimize, Dfa};
use crate::classifier::{classify_benchmark, classify_language};
use crate::datagen::benchmarks as registry;
use crate::Result;

/// Random minimal DFAs with at most 5 states over at most 3 letters.
pub(crate) fn corpus(opts: &SuiteOptions) -> Vec<Dfa> {
    let mut rng = ChaCha8Rng::seed_from_u64(opts.seed);
    (0..opts.trials.unwrap_or(200))
        .map(|_| minimize(&random_dfa(&mut rng, 5, 3)))
        .collect()
}

fn word(d: &Dfa, w: &str) -> Vec<usize> {
    d.alphabet().parse_word(w).expect("witness words use the alphabet")
}

/// The transformation induced by `w`.
fn walk_all(d: &Dfa, w: &[usize]) -> Vec<usize> {
    (0..d.num_states()).map(|q| d.walk(q, w)).collect()
}

pub(crate) fn definiteness(opts: &SuiteOptions) -> Result<Vec<Check>> {
    let dfas = corpus(opts);
    let b = opts.element_budget;
    let rows = dfas
        .par_iter()
        .map(|d| -> Result<(bool, bool, bool, bool)> {
            let rz = is_definite(d, b)?;
            let np = is_nonpermutational(d, b)?;
            let sd = definite_degree_by_suffixes(d).is_some();
            // t_s · t_e must differ from t_e on some state
            let witness_ok = match rz.witness() {
                None => true,
                Some(w) => {
                    let mut se = word(d, &w.s_word);
                    se.extend(word(d, &w.e_word));
                    walk_all(d, &se) != walk_all(d, &word(d, &w.e_word))
                }
            };
            Ok((rz.holds(), np.holds(), sd, witness_ok))
        })
        .collect::<Result<Vec<_>>>()?;
    let agree = rows.iter().filter(|(a, b, c, _)| a == b && b == c).count();
    let definite = rows.iter().filter(|r| r.0).count();
    let witnesses = rows.iter().filter(|r| r.3).count();
    Ok(vec![
        check(
            "three-way definiteness agreement",
            agree == rows.len(),
            format!("{agree}/{} agree ({definite} definite)", rows.len()),
        ),
        check(
            "right-zero counterexamples revalidate",
            witnesses == rows.len(),
            format!("{witnesses}/{}", rows.len()),
        ),
    ])
}

pub(crate) fn local_r_triviality(opts: &SuiteOptions) -> Result<Vec<Check>> {
    let dfas = corpus(opts);
    let b = opts.element_budget;
    let rows = dfas
        .par_iter()
        .map(|d| -> Result<(bool, bool, bool, bool, bool)> {
            let s = transition_semigroup_with_budget(d, b)?;
            let lrt = is_locally_r_trivial(&s).holds();
            let cfg = find_forbidden_config(d, b)?;
            let cfg_ok = cfg.as_ref().is_none_or(|w| {
                let (u, v, x) = (word(d, &w.u), word(d, &w.v), word(d, &w.x));
                w.q != w.q_prime
                    && d.walk(w.q, &u) == w.q_prime
                    && d.walk(w.q_prime, &v) == w.q
                    && d.walk(w.q, &x) == w.q
                    && d.walk(w.q_prime, &x) == w.q_prime
            });
            let def = is_definite(d, b)?.holds();
            let aper = is_aperiodic(&s).holds();
            let hierarchy = (!def || lrt) && (!lrt || aper);
            Ok((lrt, cfg.is_none(), cfg_ok, hierarchy, def))
        })
        .collect::<Result<Vec<_>>>()?;
    let agree = rows.iter().filter(|r| r.0 == r.1).count();
    let lrt = rows.iter().filter(|r| r.0).count();
    let valid = rows.iter().filter(|r| r.2).count();
    let hier = rows.iter().filter(|r| r.3).count();
    let mut checks = vec![
        check(
            "local R-triviality vs forbidden configuration",
            agree == rows.len(),
            format!("{agree}/{} agree ({lrt} locally R-trivial)", rows.len()),
        ),
        check("configuration witnesses revalidate", valid == rows.len(), format!("{valid}/{}", rows.len())),
        check(
            "definite => locally R-trivial => aperiodic",
            hier == rows.len(),
            format!("{hier}/{}", rows.len()),
        ),
    ];
    let reg = registry();
    let dyck = reg.iter().find(|l| l.id == "dyck-depth-2").expect("registry entry");
    let alt = reg.iter().find(|l| l.id == "alt-ab").expect("registry entry");
    let w = find_forbidden_config(&dyck.dfa, b)?;
    let got = w.as_ref().map(|w| (w.q, w.q_prime, w.u.as_str(), w.v.as_str(), w.x.as_str()));
    checks.push(check(
        "bounded Dyck witness is (q0, q1, a, b, ab)",
        got == Some((0, 1, "a", "b", "ab")),
        format!("{got:?}"),
    ));
    let none = find_forbidden_config(&alt.dfa, b)?;
    checks.push(check("(ab)* has no configuration", none.is_none(), format!("{none:?}")));
    let dyck_s = transition_semigroup_with_budget(&dyck.dfa, b)?;
    checks.push(check(
        "bounded Dyck semigroup is not locally R-trivial",
        matches!(is_locally_r_trivial(&dyck_s), Verdict::Fails(_)),
        "",
    ));
    Ok(checks)
}

pub(crate) fn benchmarks(opts: &SuiteOptions) -> Result<Vec<Check>> {
    registry()
        .iter()
        .map(|lang| {
            let got = classify_language(&lang.dfa, opts.element_budget)?;
            let want = classify_benchmark(lang.id)?;
            Ok(check(
                lang.id,
                got.decidable() == want.decidable(),
                format!(
                    "{}: definite={:?} yptl={:?} star_free={:?}",
                    lang.fragment_class.name(),
                    got.definite,
                    got.yptl_definable,
                    got.star_free
                ),
            ))
        })
        .collect()
}
