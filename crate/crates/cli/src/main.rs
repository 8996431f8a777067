//! `poset-shell`: enumerate, draw and verify the posets of rooks and partial
//! involutions.
//!
//! Exit status: 0 when every check passes, 1 when a check finds a violation,
//! 2 on usage errors (bad flags, size caps, unsupported requests).

mod check;
mod output;

use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand, ValueEnum};
use poset_shell::bitset::BitSet;
use poset_shell::embeddings::{involution_group_poset, symmetric_group_poset};
use poset_shell::labeling::pn_edge_labels;
use poset_shell::poset::DotStyle;
use poset_shell::rook::{
    all_partial_involutions, all_rooks, binomial, enumerate_partial_involutions, enumerate_rooks, factorial,
    involutions, permutations, rook_count_formula,
};
use poset_shell::{partial_involution_poset, partial_involution_subposet, rook_poset, rook_subposet, FinitePoset};
use serde_json::json;

use crate::output::{Failure, Outcome, Report};

#[derive(Parser, Debug)]
#[command(name = "poset-shell", version, about = "Bruhat-Chevalley-Renner posets of rooks and partial involutions")]
struct Cli {
    #[command(subcommand)]
    command: Command,

    /// Output format
    #[arg(long, global = true, value_enum, default_value_t = Format::Text)]
    format: Format,

    /// Write the report here instead of stdout
    #[arg(long, global = true)]
    out: Option<PathBuf>,

    /// Worker threads for interval checks
    #[arg(long, global = true, default_value_t = 1)]
    jobs: usize,

    /// Lift the size caps
    #[arg(long, global = true)]
    allow_large: bool,
}

#[derive(Subcommand, Debug)]
enum Command {
    /// List the elements of a poset with their count
    Enumerate(Target),
    /// Hasse diagram, with move labels on P_n
    Hasse {
        #[command(flatten)]
        target: Target,
        /// Highlight the elements of rank n-1 and n (the copy of S_{n+1} or I_{n+1})
        #[arg(long)]
        highlight_embedding: bool,
    },
    /// Run a verifier
    Check {
        #[arg(value_enum)]
        what: CheckKind,
        #[command(flatten)]
        opts: CheckOpts,
    },
}

#[derive(Args, Debug, Clone)]
struct Target {
    #[arg(long, value_enum, default_value_t = PosetKind::PartialInvolutions)]
    poset: PosetKind,
    #[arg(long)]
    n: usize,
    /// Restrict to elements with exactly k nonzero entries
    #[arg(long)]
    k: Option<usize>,
}

#[derive(Args, Debug, Clone)]
pub struct CheckOpts {
    #[arg(long)]
    pub n: usize,
    #[arg(long, conflicts_with = "all_k")]
    pub k: Option<usize>,
    /// Every k from 0 to n (the default when --k is absent)
    #[arg(long)]
    pub all_k: bool,
    #[arg(long, value_enum)]
    pub side: Option<SideArg>,
    /// For `check el`: which poset to label
    #[arg(long, value_enum, default_value_t = PosetKind::PartialInvolutions)]
    pub poset: PosetKind,
    /// Include every interval in the report, not only violations
    #[arg(long)]
    pub full: bool,
}

#[derive(ValueEnum, Clone, Copy, Debug, PartialEq, Eq)]
pub enum Format {
    Text,
    Json,
    Dot,
}

#[derive(ValueEnum, Clone, Copy, Debug, PartialEq, Eq)]
pub enum PosetKind {
    Rooks,
    PartialInvolutions,
    Involutions,
    Permutations,
}

impl PosetKind {
    fn name(self) -> &'static str {
        match self {
            Self::Rooks => "rooks",
            Self::PartialInvolutions => "partial-involutions",
            Self::Involutions => "involutions",
            Self::Permutations => "permutations",
        }
    }
}

#[derive(ValueEnum, Clone, Copy, Debug, PartialEq, Eq)]
pub enum SideArg {
    Rooks,
    Involutions,
}

#[derive(ValueEnum, Clone, Copy, Debug, PartialEq, Eq)]
pub enum CheckKind {
    El,
    Eulerian,
    Covers,
    Iso,
    Shelling,
    MobiusCross,
}

/// Everything a run needs, after parsing.
#[derive(Debug)]
pub struct RunConfig {
    pub format: Format,
    pub out: Option<PathBuf>,
    pub jobs: usize,
    pub allow_large: bool,
}

impl RunConfig {
    /// Rejects `n > cap` unless `--allow-large` was given.
    pub fn cap(&self, n: usize, cap: usize, what: &str) -> Result<(), Failure> {
        if n > cap && !self.allow_large {
            return Err(Failure::Usage(format!("{what} is capped at n = {cap}; pass --allow-large to go beyond")));
        }
        Ok(())
    }
}

const ENUMERATE_CAP: usize = 6;
const HASSE_CAP: usize = 5;

fn main() -> ExitCode {
    let cli = Cli::parse();
    let cfg = RunConfig { format: cli.format, out: cli.out, jobs: cli.jobs.max(1), allow_large: cli.allow_large };
    let outcome = match cli.command {
        Command::Enumerate(t) => enumerate(&cfg, &t),
        Command::Hasse { target, highlight_embedding } => hasse(&cfg, &target, highlight_embedding),
        Command::Check { what, opts } => check::run(&cfg, what, &opts),
    };
    output::finish(&cfg, outcome)
}

fn elements_of(t: &Target) -> Result<Vec<String>, Failure> {
    let words: Vec<String> = match (t.poset, t.k) {
        (PosetKind::Rooks, Some(k)) => enumerate_rooks(t.n, k).iter().map(ToString::to_string).collect(),
        (PosetKind::Rooks, None) => all_rooks(t.n).iter().map(ToString::to_string).collect(),
        (PosetKind::PartialInvolutions, Some(k)) => {
            enumerate_partial_involutions(t.n, k).iter().map(ToString::to_string).collect()
        }
        (PosetKind::PartialInvolutions, None) => all_partial_involutions(t.n).iter().map(ToString::to_string).collect(),
        (PosetKind::Involutions, None) => involutions(t.n).iter().map(ToString::to_string).collect(),
        (PosetKind::Permutations, None) => permutations(t.n).iter().map(ToString::to_string).collect(),
        (kind, Some(_)) => return Err(Failure::Usage(format!("--k does not apply to {}", kind.name()))),
    };
    Ok(words)
}

fn tau(n: usize) -> u64 {
    // τ_{m+1} = τ_m + m τ_{m-1}, independent of the enumerator
    let (mut prev, mut cur) = (1u64, 1u64);
    for m in 1..n {
        (prev, cur) = (cur, cur + m as u64 * prev);
    }
    if n == 0 {
        1
    } else {
        cur
    }
}

/// Count predicted without enumerating.
fn expected_count(t: &Target) -> u64 {
    let n = t.n;
    let ks: Vec<usize> = t.k.map_or_else(|| (0..=n).collect(), |k| vec![k]);
    match t.poset {
        PosetKind::Rooks => ks.iter().map(|&k| if k <= n { rook_count_formula(n, k) } else { 0 }).sum(),
        PosetKind::PartialInvolutions => ks
            .iter()
            .map(|&k| {
                // choose the support, then an involution of it
                (0..=k / 2)
                    .map(|pairs| {
                        let fixed = k - 2 * pairs;
                        binomial(n as u64, k as u64) * binomial(k as u64, fixed as u64) * (tau_fpf(2 * pairs))
                    })
                    .sum::<u64>()
            })
            .sum(),
        PosetKind::Involutions => tau(n),
        PosetKind::Permutations => factorial(n as u64),
    }
}

/// Fixed-point-free involutions of `2p` points: `(2p-1)!!`.
fn tau_fpf(m: usize) -> u64 {
    (1..m as u64).step_by(2).product()
}

fn enumerate(cfg: &RunConfig, t: &Target) -> Outcome {
    cfg.cap(t.n, ENUMERATE_CAP, "enumerate")?;
    if t.k.is_some_and(|k| k > t.n) {
        return Err(Failure::Usage(format!("k = {} exceeds n = {}", t.k.unwrap(), t.n)));
    }
    let els = elements_of(t)?;
    let expected = expected_count(t);
    let ok = els.len() as u64 == expected;
    let mut text = format!(
        "poset: {}\nn: {}\n{}count: {}\nexpected: {}\n",
        t.poset.name(),
        t.n,
        t.k.map(|k| format!("k: {k}\n")).unwrap_or_default(),
        els.len(),
        expected
    );
    for e in &els {
        text.push_str(e);
        text.push('\n');
    }
    let json = json!({
        "command": "enumerate",
        "poset": t.poset.name(),
        "n": t.n,
        "k": t.k,
        "count": els.len(),
        "expected": expected,
        "elements": els,
    });
    Ok(Report { text, json, dot: None, passed: ok })
}

fn hasse(cfg: &RunConfig, t: &Target, highlight: bool) -> Outcome {
    cfg.cap(t.n, HASSE_CAP, "hasse")?;
    if t.k.is_some_and(|k| k > t.n) {
        return Err(Failure::Usage(format!("k = {} exceeds n = {}", t.k.unwrap(), t.n)));
    }
    if highlight && (t.k.is_some() || matches!(t.poset, PosetKind::Involutions | PosetKind::Permutations)) {
        return Err(Failure::Usage(
            "--highlight-embedding applies to the full rooks or partial-involutions poset".into(),
        ));
    }
    let name = format!("{}_{}{}", t.poset.name(), t.n, t.k.map(|k| format!("_{k}")).unwrap_or_default());
    match t.poset {
        PosetKind::Rooks => {
            let p = match t.k {
                Some(k) => rook_subposet(t.n, k)?,
                None => rook_poset(t.n)?,
            };
            let hl = highlight.then(|| high_rank(&p, t.n, |x| x.rank()));
            Ok(render(&p, &name, None, hl.as_ref()))
        }
        PosetKind::PartialInvolutions => {
            let p = match t.k {
                Some(k) => partial_involution_subposet(t.n, k)?,
                None => partial_involution_poset(t.n)?,
            };
            // labels are defined on covers of the full P_n only
            let labels = if t.k.is_none() { Some(pn_edge_labels(&p)?) } else { None };
            let lab = labels.as_ref().map(|l| move |a: usize, b: usize| l.get(a, b).map(ToString::to_string));
            let hl = highlight.then(|| high_rank(&p, t.n, |x| x.rank()));
            Ok(render(&p, &name, lab.as_ref().map(|f| f as &dyn Fn(usize, usize) -> Option<String>), hl.as_ref()))
        }
        PosetKind::Involutions => Ok(render(&involution_group_poset(t.n)?, &name, None, None)),
        PosetKind::Permutations => Ok(render(&symmetric_group_poset(t.n)?, &name, None, None)),
    }
}

fn high_rank<T>(p: &FinitePoset<T>, n: usize, rank: impl Fn(&T) -> usize) -> BitSet {
    let mut hl = BitSet::new(p.len());
    for (i, x) in p.elements().iter().enumerate() {
        if rank(x) + 1 >= n {
            hl.insert(i);
        }
    }
    hl
}

fn render<T>(
    p: &FinitePoset<T>,
    name: &str,
    labels: Option<&dyn Fn(usize, usize) -> Option<String>>,
    highlight: Option<&BitSet>,
) -> Report
where
    T: Clone + Eq + std::hash::Hash + std::fmt::Display + serde::Serialize,
{
    let dot = p.to_dot(&DotStyle { name, edge_label: labels, highlight });
    let edges = p.hasse_edges();
    let mut text = format!("elements: {}\nedges: {}\n", p.len(), edges.len());
    if let Some(h) = highlight {
        text.push_str(&format!("highlighted: {}\n", h.count()));
    }
    for (a, b) in &edges {
        let lab = labels.and_then(|f| f(*a, *b)).map(|l| format!(" {l}")).unwrap_or_default();
        text.push_str(&format!("{} -> {}{}\n", p.element(*a), p.element(*b), lab));
    }
    let label_strings = labels.map(|f| move |a: usize, b: usize| f(a, b).unwrap_or_default());
    let mut json = p.to_json(label_strings.as_ref().map(|f| f as &dyn Fn(usize, usize) -> String));
    if let Some(h) = highlight {
        json["highlighted"] = json!(h.iter().collect::<Vec<_>>());
    }
    Report { text, json, dot: Some(dot), passed: true }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn tau_by_recurrence() {
        let got: Vec<u64> = (0..=7).map(tau).collect();
        assert_eq!(got, [1, 1, 2, 4, 10, 26, 76, 232]);
    }

    #[test]
    fn predicted_counts() {
        let t = |poset, n, k| expected_count(&Target { poset, n, k });
        assert_eq!(t(PosetKind::PartialInvolutions, 3, None), 14);
        assert_eq!(t(PosetKind::PartialInvolutions, 4, Some(2)), 6 * 2);
        assert_eq!(t(PosetKind::Rooks, 3, Some(2)), 18);
        assert_eq!(t(PosetKind::Rooks, 3, None), 34);
        assert_eq!(t(PosetKind::Permutations, 4, None), 24);
        assert_eq!(t(PosetKind::Involutions, 4, None), 10);
    }

    #[test]
    fn fixed_point_free_counts() {
        assert_eq!([0, 2, 4, 6].map(tau_fpf), [1, 1, 3, 15]);
    }

    #[test]
    fn cli_definition_is_consistent() {
        use clap::CommandFactory;
        Cli::command().debug_assert();
    }
}
