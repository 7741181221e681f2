//! Scalable inputs for the benchmarks. Every builder is deterministic.

use brinseq::{parse_term, FunctionTable, Term};

fn term(text: &str) -> Term {
    parse_term(text).expect("corpus terms are well formed")
}

/// `n` tests that each jump over their successor, closed by a repetition with the same
/// shape, so the canonical forms have real jump chains to resolve.
pub fn jump_ladder(n: usize) -> Term {
    let body: Vec<String> = (0..n).map(|i| format!("+a{i};#2")).collect();
    let body = body.join(";");
    term(&format!("{body};({body};b)*"))
}

/// Repetitions nested `depth` deep, each with a few instructions in front.
pub fn nested(depth: usize) -> Term {
    let mut text = String::from("(c;#3)*");
    for i in 0..depth {
        text = format!("-a{i};#4;b{i};!;({text})*");
    }
    term(&text)
}

/// Decrements a `bits`-bit counter held in `aux:1..bits`, least significant first.
pub fn decrement(bits: usize) -> Term {
    let mut text = String::new();
    for i in 1..=bits {
        text.push_str(&format!("-aux:{i}.i/i;#3;aux:{i}.0/0;!;aux:{i}.1/1;"));
    }
    text.push('!');
    term(&text)
}

/// Decrements a `bits`-bit counter in `aux:1..bits` until it reaches zero, then halts.
pub fn countdown(bits: usize) -> Term {
    let mut text = String::new();
    for i in 1..=bits {
        text.push_str(&format!("+aux:{i}.i/i;#{};", 2 * (bits - i) + 2));
    }
    text.push_str("!;");
    for i in 1..=bits {
        text.push_str(&format!(
            "-aux:{i}.i/i;#3;aux:{i}.0/0;#{};aux:{i}.1/1;",
            5 * (bits - i) + 2
        ));
    }
    term(&format!("({})*", text.trim_end_matches(';')))
}

/// Parity of `n` input bits, written to one output.
pub fn parity(n: usize) -> FunctionTable {
    table(n, |ones| ones % 2 == 1)
}

/// Majority of `n` input bits, written to one output.
pub fn majority(n: usize) -> FunctionTable {
    table(n, |ones| 2 * ones as usize > n)
}

/// Both tables are symmetric in their inputs, so the row order does not matter.
fn table(n: usize, f: impl Fn(u32) -> bool) -> FunctionTable {
    let rows = (0..1usize << n)
        .map(|x| Some(vec![f(x.count_ones())]))
        .collect();
    FunctionTable::new(n, 1, rows).expect("table shape is valid")
}

/// A program with `n` inputs mixing the non-core instructions that restriction rewrites.
pub fn non_core_mix(n: usize) -> Term {
    let ops = ["c/c", "i/c", "c/i", "0/c", "1/i"];
    let mut text = String::new();
    for i in 0..n {
        let op = ops[i % ops.len()];
        text.push_str(&format!("+in:{}.{op};#2;out:1.c/c;", i + 1));
    }
    text.push('!');
    term(&text)
}
