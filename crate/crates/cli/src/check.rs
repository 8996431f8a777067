//! `poset-shell check ...`

use std::collections::BTreeSet;

use poset_shell::covers::{candidate_moves, classify_cover, covers_of, is_cover_oracle};
use poset_shell::embeddings::{
    eulerian_counterexample, involution_union_is_interval, rook_union_is_interval, transport_labeling, verify_phi,
    verify_psi, PosetIsomorphismReport, Side,
};
use poset_shell::labeling::{decreasing_chain_mobius, pn_edge_labels, verify_el, ElReport};
use poset_shell::rook::{factorial, involution_count};
use poset_shell::{
    leq_partial_involutions, partial_involution_poset, partial_involution_subposet, rook_poset, rook_subposet,
    PartialInvolution,
};
use rayon::prelude::*;
use serde_json::{json, Value};

use crate::output::{table, verdict, Failure, Outcome, Report};
use crate::{CheckKind, CheckOpts, PosetKind, RunConfig, SideArg};

pub fn run(cfg: &RunConfig, what: CheckKind, o: &CheckOpts) -> Outcome {
    let (cap, name) = match what {
        CheckKind::El => (5, "check el"),
        CheckKind::Eulerian => (5, "check eulerian"),
        CheckKind::Covers => (5, "check covers"),
        CheckKind::Iso => (5, "check iso"),
        CheckKind::Shelling => (4, "check shelling"),
        CheckKind::MobiusCross => (4, "check mobius-cross"),
    };
    // I_n is built from P_{n-1}, so the involution side of `el` gets one more
    let cap = if what == CheckKind::El && o.poset == PosetKind::Involutions { cap + 1 } else { cap };
    cfg.cap(o.n, cap, name)?;
    if o.k.is_some_and(|k| k > o.n) {
        return Err(Failure::Usage(format!("k = {} exceeds n = {}", o.k.unwrap(), o.n)));
    }
    if what != CheckKind::Eulerian && (o.k.is_some() || o.all_k) {
        return Err(Failure::Usage(format!("--k and --all-k only apply to check eulerian, not {name}")));
    }
    let pool = rayon::ThreadPoolBuilder::new()
        .num_threads(cfg.jobs)
        .build()
        .map_err(|e| Failure::Usage(format!("cannot start {} workers: {e}", cfg.jobs)))?;
    match what {
        CheckKind::El => el(cfg, o),
        CheckKind::Eulerian => eulerian(o),
        CheckKind::Covers => pool.install(|| covers(o.n)),
        CheckKind::Iso => iso(o),
        CheckKind::Shelling => shelling(o.n),
        CheckKind::MobiusCross => pool.install(|| mobius_cross(o.n)),
    }
}

fn sides(side: Option<SideArg>) -> Vec<Side> {
    match side {
        Some(SideArg::Rooks) => vec![Side::Rooks],
        Some(SideArg::Involutions) => vec![Side::Involutions],
        None => vec![Side::Rooks, Side::Involutions],
    }
}

fn side_name(s: Side) -> &'static str {
    match s {
        Side::Rooks => "rooks",
        Side::Involutions => "involutions",
    }
}

fn el_summary(title: &str, r: &ElReport, full: bool) -> (String, Value) {
    let shown: Vec<_> = if full { r.verdicts.iter().collect() } else { r.violations().collect() };
    let mut text = format!(
        "check el: {title}\nintervals checked: {}\nviolations: {}\n",
        r.intervals_checked,
        r.violation_count()
    );
    if !shown.is_empty() {
        let rows: Vec<Vec<String>> = shown
            .iter()
            .map(|v| {
                vec![
                    v.bottom.clone(),
                    v.top.clone(),
                    if v.increasing_count >= 2 { "2+".into() } else { v.increasing_count.to_string() },
                    if v.lex_first_increasing { "yes" } else { "no" }.into(),
                    verdict(v.passes()).into(),
                ]
            })
            .collect();
        text.push('\n');
        text.push_str(&table(&["bottom", "top", "increasing", "lex-first", "verdict"], &rows));
    }
    text.push_str(&format!("\nresult: {}\n", verdict(r.passed())));
    let json = json!({
        "command": "check el",
        "poset": title,
        "intervals_checked": r.intervals_checked,
        "violation_count": r.violation_count(),
        "intervals": shown,
    });
    (text, json)
}

fn el(cfg: &RunConfig, o: &CheckOpts) -> Outcome {
    let n = o.n;
    match o.poset {
        PosetKind::PartialInvolutions => {
            let p = partial_involution_poset(n)?;
            let labels = pn_edge_labels(&p)?;
            let r = verify_el(&p, &labels, Some(cfg.jobs))?;
            let (text, json) = el_summary(&format!("P_{n} with move labels"), &r, o.full);
            Ok(Report { text, json, dot: None, passed: r.passed() })
        }
        PosetKind::Involutions => {
            if n == 0 {
                return Err(Failure::Usage("the labeling of I_n is pulled back from P_{n-1}; n must be at least 1".into()));
            }
            let t = transport_labeling(n - 1)?;
            let r = verify_el(&t.poset, &t.labels, Some(cfg.jobs))?;
            let (text, json) = el_summary(&format!("I_{n} with labels pulled back from P_{}", n - 1), &r, o.full);
            Ok(Report { text, json, dot: None, passed: r.passed() })
        }
        PosetKind::Rooks | PosetKind::Permutations => Err(Failure::Usage(format!(
            "out of scope: an EL-labeling of {} would be induced from one of R_n, which this tool does not provide",
            o.poset.name()
        ))),
    }
}

fn eulerian(o: &CheckOpts) -> Outcome {
    let n = o.n;
    let ks: Vec<usize> = o.k.map_or_else(|| (0..=n).collect(), |k| vec![k]);
    let mut rows = Vec::new();
    let mut entries = Vec::new();
    let mut all_ok = true;
    for side in sides(o.side) {
        for &k in &ks {
            let rep = match side {
                Side::Rooks => rook_subposet(n, k)?.is_eulerian()?,
                Side::Involutions => partial_involution_subposet(n, k)?.is_eulerian()?,
            };
            // the claim covers 1 <= k <= n; k = 0 is a single point and only reported
            let expected = (k >= 1).then(|| k + 1 >= n);
            let counter = if k >= 1 && k + 2 <= n { Some(eulerian_counterexample(n, k, side)?) } else { None };
            let ok = rep.tests_agree()
                && expected.is_none_or(|e| e == rep.is_eulerian())
                && counter.as_ref().is_none_or(|c| c.exactly_three);
            all_ok &= ok;
            rows.push(vec![
                side_name(side).to_string(),
                k.to_string(),
                rep.is_eulerian().to_string(),
                expected.map_or("-".into(), |e| e.to_string()),
                rep.tests_agree().to_string(),
                counter.as_ref().map_or("-".into(), |c| format!("[{}, {}] has {}", c.triple[0], c.triple[2], c.interval.len())),
                verdict(ok).into(),
            ]);
            entries.push(json!({
                "side": side,
                "k": k,
                "eulerian": rep.is_eulerian(),
                "expected": expected,
                "parity_test": rep.parity,
                "mobius_test": rep.mobius,
                "counterexample": counter,
                "passed": ok,
            }));
        }
    }
    let mut text = format!("check eulerian: n = {n}\n\n");
    text.push_str(&table(&["side", "k", "eulerian", "expected", "tests agree", "counterexample", "verdict"], &rows));
    text.push_str(&format!("\nresult: {}\n", verdict(all_ok)));
    Ok(Report { text, json: json!({"command": "check eulerian", "n": n, "subposets": entries}), dot: None, passed: all_ok })
}

fn covers(n: usize) -> Outcome {
    let p = partial_involution_poset(n)?;
    let els = p.elements();
    let hasse: BTreeSet<(usize, usize)> = p.hasse_edges().into_iter().collect();
    let pairs = |f: &(dyn Fn(usize, usize) -> bool + Sync)| -> BTreeSet<(usize, usize)> {
        (0..els.len())
            .into_par_iter()
            .flat_map_iter(|a| (0..els.len()).filter(move |&b| f(a, b)).map(move |b| (a, b)).collect::<Vec<_>>())
            .collect()
    };
    let oracle = pairs(&|a, b| is_cover_oracle(&els[a], &els[b]));
    // nothing strictly between, straight from the order
    let brute = pairs(&|a, b| {
        a != b
            && leq_partial_involutions(&els[a], &els[b])
            && !els.iter().any(|z| {
                z != &els[a] && z != &els[b] && leq_partial_involutions(&els[a], z) && leq_partial_involutions(z, &els[b])
            })
    });
    let moves: BTreeSet<(usize, usize)> = (0..els.len())
        .flat_map(|a| covers_of(&els[a]).into_iter().map(move |y| (a, y)))
        .map(|(a, y)| Ok((a, p.index_of(&y)?)))
        .collect::<Result<_, Failure>>()?;
    let ambiguous: Vec<String> = hasse
        .iter()
        .filter(|&&(a, b)| {
            classify_cover(&els[a], &els[b]).is_err()
                || candidate_moves(&els[a]).iter().filter(|(_, z)| *z == els[b]).count() != 1
        })
        .map(|&(a, b)| format!("{} -> {}", els[a], els[b]))
        .collect();
    let diff = |x: &BTreeSet<(usize, usize)>| -> Vec<String> {
        x.symmetric_difference(&brute).map(|&(a, b)| format!("{} -> {}", els[a], els[b])).collect()
    };
    let (d_hasse, d_oracle, d_moves) = (diff(&hasse), diff(&oracle), diff(&moves));

    // (2,1,3,0) < (4,0,3,1) removes a suitable rise but is not a cover
    let exclusion = if n == 4 {
        let y: PartialInvolution = "(2,1,3,0)".parse()?;
        let x: PartialInvolution = "(4,0,3,1)".parse()?;
        Some(leq_partial_involutions(&y, &x) && !is_cover_oracle(&y, &x) && !covers_of(&y).contains(&x))
    } else {
        None
    };
    let passed = d_hasse.is_empty() && d_oracle.is_empty() && d_moves.is_empty() && ambiguous.is_empty() && exclusion != Some(false);
    let mut text = format!("check covers: P_{n} ({} elements)\n\n", els.len());
    text.push_str(&table(
        &["source", "edges", "discrepancies"],
        &[
            vec!["brute force".into(), brute.len().to_string(), "-".into()],
            vec!["transitive reduction".into(), hasse.len().to_string(), d_hasse.len().to_string()],
            vec!["rank-matrix oracle".into(), oracle.len().to_string(), d_oracle.len().to_string()],
            vec!["c/d/r moves".into(), moves.len().to_string(), d_moves.len().to_string()],
        ],
    ));
    text.push_str(&format!("covers without exactly one move: {}\n", ambiguous.len()));
    if let Some(e) = exclusion {
        text.push_str(&format!("(2,1,3,0) < (4,0,3,1) is not a cover: {e}\n"));
    }
    for line in d_hasse.iter().chain(&d_oracle).chain(&d_moves).chain(&ambiguous) {
        text.push_str(&format!("  {line}\n"));
    }
    text.push_str(&format!("\nresult: {}\n", verdict(passed)));
    let json = json!({
        "command": "check covers",
        "n": n,
        "elements": els.len(),
        "edges": brute.len(),
        "discrepancies": {"transitive_reduction": d_hasse, "oracle": d_oracle, "moves": d_moves},
        "ambiguous": ambiguous,
        "exclusion_fixture": exclusion,
    });
    Ok(Report { text, json, dot: None, passed })
}

fn iso(o: &CheckOpts) -> Outcome {
    let n = o.n;
    if n == 0 {
        return Err(Failure::Usage("check iso needs n >= 1".into()));
    }
    let mut rows = Vec::new();
    let mut entries = Vec::new();
    let mut all_ok = true;
    for side in sides(o.side) {
        let (rep, size, expected, interval): (PosetIsomorphismReport, usize, u64, bool) = match side {
            Side::Rooks => (
                verify_psi(n)?,
                poset_shell::embeddings::rook_union_poset(n)?.len(),
                factorial(n as u64 + 1),
                rook_union_is_interval(n)?,
            ),
            Side::Involutions => (
                verify_phi(n)?,
                poset_shell::embeddings::involution_union_poset(n)?.len(),
                involution_count(n + 1),
                involution_union_is_interval(n)?,
            ),
        };
        let ok = rep.is_isomorphism() && size as u64 == expected && interval;
        all_ok &= ok;
        let (map, target) = match side {
            Side::Rooks => ("psi", format!("S_{}", n + 1)),
            Side::Involutions => ("phi", format!("I_{}", n + 1)),
        };
        rows.push(vec![
            map.to_string(),
            target.clone(),
            size.to_string(),
            expected.to_string(),
            rep.bijective.to_string(),
            (rep.order_preserving_forward && rep.order_preserving_backward).to_string(),
            interval.to_string(),
            verdict(ok).into(),
        ]);
        entries.push(json!({
            "side": side,
            "map": map,
            "codomain": target,
            "domain_size": size,
            "expected_size": expected,
            "report": rep,
            "union_is_interval": interval,
            "passed": ok,
        }));
    }
    let mut text = format!("check iso: n = {n}\n\n");
    text.push_str(&table(&["map", "onto", "size", "expected", "bijective", "order iso", "interval", "verdict"], &rows));
    text.push_str(&format!("\nresult: {}\n", verdict(all_ok)));
    Ok(Report { text, json: json!({"command": "check iso", "n": n, "maps": entries}), dot: None, passed: all_ok })
}

fn shelling(n: usize) -> Outcome {
    let p = partial_involution_poset(n)?;
    let labels = pn_edge_labels(&p)?;
    let (lo, hi) = (p.bottom().expect("P_n has a bottom"), p.top().expect("P_n has a top"));
    let full = p.interval(lo, hi)?;
    let facets = p.order_complex_facets_by(&full, |c| labels.word(c).expect("chain of covers"))?;
    let rep = poset_shell::poset::verify_shelling(&facets)?;
    let mut text = format!(
        "check shelling: proper part of P_{n}, facets in lex order of label words\nfacets: {}\nfacet dimension: {}\n",
        facets.len(),
        facets.first().map_or(0, |f| f.len().saturating_sub(1))
    );
    if let Some(i) = rep.first_failure {
        text.push_str(&format!("first failing facet: {i}\n"));
    }
    text.push_str(&format!("\nresult: {}\n", verdict(rep.is_shelling)));
    let json = json!({"command": "check shelling", "n": n, "facets": facets.len(), "report": rep});
    Ok(Report { text, json, dot: None, passed: rep.is_shelling })
}

fn mobius_cross(n: usize) -> Outcome {
    let p = partial_involution_poset(n)?;
    let labels = pn_edge_labels(&p)?;
    let mismatches: Vec<(String, String, i64, i64)> = (0..p.len())
        .into_par_iter()
        .map(|x| -> Result<Vec<_>, Failure> {
            let mut out = Vec::new();
            for y in p.up_set(x).iter() {
                let bw = decreasing_chain_mobius(&p, &labels, x, y)?;
                let mu = p.mobius(x, y)?;
                if bw != mu {
                    out.push((p.element(x).to_string(), p.element(y).to_string(), bw, mu));
                }
            }
            Ok(out)
        })
        .collect::<Result<Vec<_>, _>>()?
        .into_iter()
        .flatten()
        .collect();
    let intervals: usize = (0..p.len()).map(|x| p.up_set(x).count()).sum();

    // the two Eulerian tests on every poset in reach
    let mut tested = Vec::new();
    let mut push = |name: String, r: poset_shell::poset::EulerianReport| tested.push((name, r.parity, r.mobius));
    push(format!("P_{n}"), p.is_eulerian()?);
    push(format!("R_{n}"), rook_poset(n)?.is_eulerian()?);
    for k in 0..=n {
        push(format!("P_{n},{k}"), partial_involution_subposet(n, k)?.is_eulerian()?);
        push(format!("R_{n},{k}"), rook_subposet(n, k)?.is_eulerian()?);
    }
    let disagree: Vec<&String> = tested.iter().filter(|(_, a, b)| a != b).map(|(s, _, _)| s).collect();
    let passed = mismatches.is_empty() && disagree.is_empty();

    let mut text = format!(
        "check mobius-cross: P_{n}\nintervals: {intervals}\ndecreasing-chain count differs from mobius: {}\n",
        mismatches.len()
    );
    if !mismatches.is_empty() {
        let rows: Vec<Vec<String>> =
            mismatches.iter().map(|(a, b, bw, mu)| vec![a.clone(), b.clone(), bw.to_string(), mu.to_string()]).collect();
        text.push('\n');
        text.push_str(&table(&["bottom", "top", "signed chains", "mobius"], &rows));
        text.push('\n');
    }
    let rows: Vec<Vec<String>> = tested
        .iter()
        .map(|(s, a, b)| vec![s.clone(), a.to_string(), b.to_string(), verdict(a == b).into()])
        .collect();
    text.push_str("eulerian tests:\n");
    text.push_str(&table(&["poset", "parity", "mobius", "agree"], &rows));
    text.push_str(&format!("\nresult: {}\n", verdict(passed)));
    let json = json!({
        "command": "check mobius-cross",
        "n": n,
        "intervals": intervals,
        "mismatches": mismatches.iter().map(|(a, b, bw, mu)| json!({"bottom": a, "top": b, "signed_chains": bw, "mobius": mu})).collect::<Vec<_>>(),
        "eulerian_tests": tested.iter().map(|(s, a, b)| json!({"poset": s, "parity": a, "mobius": b})).collect::<Vec<_>>(),
    });
    Ok(Report { text, json, dot: None, passed })
}
