//! Exhaustive search for shortest programs.
//!
//! Candidates of a given length are enumerated in lexicographic order over the alphabet
//!
//! ```text
//! !  <  #0 < #1 < ...  <  register instructions
//! ```
//!
//! where register instructions are ordered by focus, then plain < `+` < `-`, then
//! `0/0` < `1/1` < `i/i`. Jumps are limited to targets inside the program; a jump past
//! the end behaves like `#0`, which comes first, so this loses no lexicographically
//! least solution.

use std::collections::HashSet;

use rand::seq::SliceRandom;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;

use crate::canonical::{to_second_canonical, CanonicalSeq};
use crate::syntax::{bits_of, BasicInstruction, Focus, FunctionTable, Instruction, Term, UnaryFn};

use super::{computes_check, IoConvention, Kind};

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SearchOptions {
    /// Shuffles the order in which partitions are scheduled. Never changes the result.
    pub seed: Option<u64>,
    pub parallel: bool,
    /// Complete candidates up to this length are skipped when structurally congruent to
    /// one already examined.
    pub dedup_max_len: usize,
}

impl Default for SearchOptions {
    fn default() -> Self {
        SearchOptions {
            seed: None,
            parallel: true,
            dedup_max_len: 4,
        }
    }
}

/// Lexicographically least program of minimal length `<= max_len` computing `f` with `k`
/// auxiliary registers, using core register instructions, jumps and `!`.
pub fn search_shortest(f: &FunctionTable, k: usize, max_len: usize) -> Option<Term> {
    search_shortest_with(f, k, max_len, &SearchOptions::default())
}

pub fn search_shortest_with(
    f: &FunctionTable,
    k: usize,
    max_len: usize,
    options: &SearchOptions,
) -> Option<Term> {
    (1..=max_len).find_map(|len| search_len(f, k, len, options))
}

/// Lexicographically least program of exactly `len` instructions computing `f`.
pub fn search_exact_len(f: &FunctionTable, k: usize, len: usize) -> Option<Term> {
    search_len(f, k, len, &SearchOptions::default())
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
enum Code {
    Halt,
    Jump(u64),
    Reg { kind: Kind, reg: usize, op: UnaryFn },
}

struct Letter {
    instr: Instruction,
    code: Code,
}

fn alphabet(conv: &IoConvention, len: usize) -> Vec<Letter> {
    let mut letters = vec![Letter {
        instr: Instruction::Halt,
        code: Code::Halt,
    }];
    letters.extend((0..len as u64).map(|l| Letter {
        instr: Instruction::Jump(l),
        code: Code::Jump(l),
    }));
    let mut foci: Vec<(Focus, usize)> = conv.foci().into_iter().zip(0..).collect();
    foci.sort();
    for (focus, reg) in foci {
        for kind in Kind::ALL {
            for op in [UnaryFn::F0, UnaryFn::T1, UnaryFn::Id] {
                letters.push(Letter {
                    instr: kind.wrap(BasicInstruction::register(focus.clone(), op, op)),
                    code: Code::Reg { kind, reg, op },
                });
            }
        }
    }
    letters
}

/// Result of running a (possibly partial) program on one input.
enum Run {
    Finished(Option<Vec<bool>>),
    /// Control reached a position not yet filled in.
    Open,
}

struct Problem<'a> {
    conv: IoConvention,
    len: usize,
    letters: Vec<Letter>,
    inputs: Vec<Vec<bool>>,
    /// Per row, the output that the definition demands; `None` for the empty family.
    expected: Vec<Option<Vec<bool>>>,
    table: &'a FunctionTable,
}

impl Problem<'_> {
    fn run(&self, program: &[usize], input: &[bool]) -> Run {
        let (n, m) = (self.conv.n, self.conv.m);
        let mut regs = vec![false; n + m + self.conv.k];
        regs[..n].copy_from_slice(input);
        let mut pc = 0usize;
        loop {
            if pc >= self.len {
                return Run::Finished(None);
            }
            let Some(&letter) = program.get(pc) else {
                return Run::Open;
            };
            match self.letters[letter].code {
                Code::Halt => {
                    let out = regs[n..n + m].to_vec();
                    return Run::Finished((m > 0).then_some(out));
                }
                Code::Jump(0) => return Run::Finished(None),
                Code::Jump(l) => pc += l as usize,
                Code::Reg { kind, reg, op } => {
                    let reply = op.eval(regs[reg]);
                    regs[reg] = reply;
                    pc += if kind.proceeds(reply) { 1 } else { 2 };
                }
            }
        }
    }

    /// `false` once some input already ends with the wrong result.
    fn viable(&self, program: &[usize]) -> Option<bool> {
        let mut complete = true;
        for (input, expected) in self.inputs.iter().zip(&self.expected) {
            match self.run(program, input) {
                Run::Finished(out) if out != *expected => return Some(false),
                Run::Finished(_) => {}
                Run::Open => complete = false,
            }
        }
        complete.then_some(true)
    }

    fn term(&self, program: &[usize]) -> Term {
        Term::from_instructions(program.iter().map(|&i| self.letters[i].instr.clone()))
            .expect("programs are nonempty")
    }

    fn allowed(&self, letter: usize, pos: usize) -> bool {
        match self.letters[letter].code {
            Code::Jump(l) => pos + (l as usize) < self.len,
            _ => true,
        }
    }

    /// Least completion of `program` in lexicographic order.
    fn complete(
        &self,
        program: &mut Vec<usize>,
        seen: &mut HashSet<CanonicalSeq>,
        dedup: bool,
    ) -> Option<Vec<usize>> {
        if program.len() == self.len {
            if dedup && !seen.insert(to_second_canonical(&self.term(program))) {
                return None;
            }
            return (self.viable(program) == Some(true)).then(|| program.clone());
        }
        if self.viable(program) == Some(false) {
            return None;
        }
        let pos = program.len();
        for letter in 0..self.letters.len() {
            if !self.allowed(letter, pos) {
                continue;
            }
            program.push(letter);
            let found = self.complete(program, seen, dedup);
            program.pop();
            if found.is_some() {
                return found;
            }
        }
        None
    }
}

fn search_len(f: &FunctionTable, k: usize, len: usize, options: &SearchOptions) -> Option<Term> {
    if len == 0 {
        return None;
    }
    let conv = IoConvention::new(f.inputs(), f.outputs(), k);
    let inputs: Vec<Vec<bool>> = (0..1usize << conv.n).map(|i| bits_of(i, conv.n)).collect();
    let expected = f
        .rows()
        .iter()
        .map(|row| row.clone().filter(|_| conv.m > 0))
        .collect();
    let problem = Problem {
        conv,
        len,
        letters: alphabet(&conv, len),
        inputs,
        expected,
        table: f,
    };
    let dedup = len <= options.dedup_max_len;
    let partitions: Vec<usize> = (0..problem.letters.len())
        .filter(|&l| problem.allowed(l, 0))
        .collect();
    let solve = |first: usize| {
        let mut program = vec![first];
        problem.complete(&mut program, &mut HashSet::new(), dedup)
    };

    let best = if options.parallel {
        let mut order = partitions.clone();
        if let Some(seed) = options.seed {
            order.shuffle(&mut ChaCha8Rng::seed_from_u64(seed));
        }
        order
            .into_par_iter()
            .filter_map(|first| solve(first).map(|p| (first, p)))
            .min_by_key(|(first, _)| *first)
            .map(|(_, p)| p)
    } else {
        partitions.into_iter().find_map(solve)
    };
    let term = problem.term(&best?);
    assert_eq!(
        computes_check(&term, problem.table, k),
        Ok(true),
        "search result {term} fails the definition"
    );
    Some(term)
}
