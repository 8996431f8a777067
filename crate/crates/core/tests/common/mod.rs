#![allow(dead_code)]

use std::collections::BTreeSet;

use poset_shell::labeling::Label;
use poset_shell::PartialInvolution;

/// `(lower, upper, label)` rows of the labeled Hasse diagram of `P_3`.
pub fn figure_p3() -> BTreeSet<(PartialInvolution, PartialInvolution, Label)> {
    include_str!("../data/p3_labels.txt")
        .lines()
        .filter(|l| !l.starts_with('#') && !l.trim().is_empty())
        .map(|l| {
            let f: Vec<&str> = l.split_whitespace().collect();
            let lab: Vec<usize> = f[2].trim_matches(|c| c == '(' || c == ')').split(',').map(|v| v.parse().unwrap()).collect();
            (f[0].parse().unwrap(), f[1].parse().unwrap(), Label::new(lab[0], lab[1]))
        })
        .collect()
}

/// Brute-force order of `P_n` straight from the definition: `x ≤ y` iff every
/// north-west submatrix of `y` has at most as many 1s as that of `x`.
pub fn brute_leq(x: &PartialInvolution, y: &PartialInvolution) -> bool {
    let n = x.n();
    let ones = |z: &PartialInvolution, k: usize, l: usize| (1..=l).filter(|&j| z.entry(j) != 0 && z.entry(j) <= k).count();
    (1..=n).all(|k| (1..=n).all(|l| ones(y, k, l) <= ones(x, k, l)))
}

/// Hasse edges of `brute_leq` by the textbook "nothing strictly between" test.
pub fn brute_covers(els: &[PartialInvolution]) -> BTreeSet<(PartialInvolution, PartialInvolution)> {
    let mut out = BTreeSet::new();
    for x in els {
        for y in els {
            if x == y || !brute_leq(x, y) {
                continue;
            }
            let between = els.iter().any(|z| z != x && z != y && brute_leq(x, z) && brute_leq(z, y));
            if !between {
                out.insert((x.clone(), y.clone()));
            }
        }
    }
    out
}
