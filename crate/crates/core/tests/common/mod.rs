//! Random expression generators shared by the acceptance run and the
//! property tests.

#![allow(dead_code)]

use rand::seq::SliceRandom;
use rand::Rng;

/// The built-in weights written out in the expression language.
pub const BUILTIN_TEXTS: [&str; 5] = [
    "1/t",
    "1/t^2",
    "1/(log(t/(2*pi)))^2",
    "1/(t^2 + 0.25)",
    "1/t^1.5",
];

/// A random weight that is positive, decreasing and convex for `t ≥ 2π`.
///
/// Products of positive decreasing convex factors stay decreasing and
/// convex, since `(fg)″ = f″g + 2f′g′ + fg″` has no negative term; positive
/// combinations preserve all three properties.
pub fn admissible_text<R: Rng>(rng: &mut R) -> String {
    const FACTORS: [&str; 12] = [
        "t^-0.5",
        "1/t",
        "t^(-1.5)",
        "1/t^2",
        "1/t^3",
        "1/log(t)",
        "1/log(t)^2",
        "exp(-t/100)",
        "exp(-t/1000)",
        "1/(t + 1)",
        "1/(t + 2.5)",
        "1/(t^2 + 3)",
    ];
    const COEFFS: [&str; 5] = ["1", "0.5", "3/7", "2", "1.25"];
    let terms = rng.gen_range(1..=3);
    let mut out = Vec::with_capacity(terms);
    for _ in 0..terms {
        let k = rng.gen_range(1..=3);
        let mut parts = vec![COEFFS.choose(rng).unwrap().to_string()];
        for _ in 0..k {
            parts.push(format!("({})", FACTORS.choose(rng).unwrap()));
        }
        out.push(parts.join("*"));
    }
    out.join(" + ")
}

/// An arbitrary expression tree of bounded depth, not necessarily defined
/// everywhere.
pub fn random_tree_text<R: Rng>(rng: &mut R, depth: u32) -> String {
    if depth == 0 || rng.gen_bool(0.25) {
        return match rng.gen_range(0..4) {
            0 | 1 => "t".into(),
            2 => "pi".into(),
            _ => {
                let n: i32 = rng.gen_range(1..50);
                let d: i32 = rng.gen_range(1..8);
                format!("{}.{}", n, d)
            }
        };
    }
    let a = random_tree_text(rng, depth - 1);
    match rng.gen_range(0..9) {
        0 => format!("({a}) + ({})", random_tree_text(rng, depth - 1)),
        1 => format!("({a}) - ({})", random_tree_text(rng, depth - 1)),
        2 | 3 => format!("({a}) * ({})", random_tree_text(rng, depth - 1)),
        4 => format!("({a}) / ({})", random_tree_text(rng, depth - 1)),
        5 => format!("log({a})"),
        6 => format!("exp(({a})/20)"),
        7 => format!("({a})^{}", rng.gen_range(-3..4)),
        _ => format!("-({a})"),
    }
}
