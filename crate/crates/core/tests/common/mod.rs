//! Generators and reference implementations shared by the integration tests.
//!
//! Nothing here calls the normalization, extraction or interaction code of the crate:
//! terms are flattened, run and compared by hand so that the library can be checked
//! against it.
#![allow(dead_code)]

use std::collections::{BTreeMap, HashSet, VecDeque};
use std::hash::Hash;

use brinseq::{
    Action, BasicInstruction, Focus, FunctionTable, Instruction, IoConvention, RegisterContent,
    RegisterOp, RegularThread, State, Term, UnaryFn,
};
use proptest::prelude::*;
use rand::seq::IndexedRandom;
use rand::Rng;

// ---------------------------------------------------------------------------------------
// flattening

/// `prefix ; period*`, or just `prefix` when the period is empty.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Flat {
    pub prefix: Vec<Instruction>,
    pub period: Vec<Instruction>,
}

impl Flat {
    pub fn finite(prefix: Vec<Instruction>) -> Self {
        Flat {
            prefix,
            period: Vec::new(),
        }
    }

    pub fn is_finite(&self) -> bool {
        self.period.is_empty()
    }

    /// The `j`-th instruction of the infinite (or finite) expansion.
    pub fn at(&self, j: usize) -> Option<&Instruction> {
        let m = self.prefix.len();
        if j < m {
            return Some(&self.prefix[j]);
        }
        if self.period.is_empty() {
            return None;
        }
        Some(&self.period[(j - m) % self.period.len()])
    }

    fn normalize(&self, pos: u64) -> u64 {
        let (m, k) = (self.prefix.len() as u64, self.period.len() as u64);
        if k > 0 && pos >= m + k {
            m + (pos - m) % k
        } else {
            pos
        }
    }

    pub fn to_term(&self) -> Term {
        let mut items: Vec<Term> = self.prefix.iter().cloned().map(Term::instr).collect();
        if !self.period.is_empty() {
            let body = Term::from_instructions(self.period.clone()).unwrap();
            items.push(Term::repeat(body));
        }
        Term::sequence(items).unwrap()
    }
}

/// Straightforward unfolding of a term into prefix and period.
pub fn flatten(t: &Term) -> Flat {
    match t {
        Term::Instr(i) => Flat::finite(vec![i.clone()]),
        Term::Concat(a, b) => {
            let a = flatten(a);
            if !a.is_finite() {
                return a;
            }
            let b = flatten(b);
            let mut prefix = a.prefix;
            prefix.extend(b.prefix);
            Flat {
                prefix,
                period: b.period,
            }
        }
        Term::Repeat(x) => {
            let x = flatten(x);
            if !x.is_finite() {
                return x;
            }
            Flat {
                prefix: Vec::new(),
                period: x.prefix,
            }
        }
    }
}

/// Lazy expansion that walks the term itself, without flattening it first.
pub fn unfold_at(t: &Term, j: usize) -> Option<Instruction> {
    fn len(t: &Term) -> Option<usize> {
        match t {
            Term::Instr(_) => Some(1),
            Term::Concat(a, b) => Some(len(a)? + len(b)?),
            Term::Repeat(_) => None,
        }
    }
    match t {
        Term::Instr(i) => (j == 0).then(|| i.clone()),
        Term::Concat(a, b) => match len(a) {
            Some(n) if j >= n => unfold_at(b, j - n),
            _ => unfold_at(a, j),
        },
        Term::Repeat(x) => match len(x) {
            Some(n) => unfold_at(x, j % n),
            None => unfold_at(x, j),
        },
    }
}

// ---------------------------------------------------------------------------------------
// behaviour by pairwise exploration

pub enum Node<S> {
    Stop,
    Dead,
    Act(Action, S, S),
}

/// A deterministic behaviour: every state terminates, is inactive, or performs one
/// action and moves on depending on the reply.
pub trait Behaviour {
    type S: Clone + Eq + Hash;
    fn root(&self) -> Self::S;
    fn node(&self, s: &Self::S) -> Node<Self::S>;
}

/// Execution of a flat sequence; the state is the position about to be executed.
pub struct Exec<'a> {
    pub seq: &'a Flat,
    pub start: u64,
}

impl Behaviour for Exec<'_> {
    type S = u64;

    fn root(&self) -> u64 {
        self.seq.normalize(self.start)
    }

    fn node(&self, s: &u64) -> Node<u64> {
        let mut pos = *s;
        let mut seen = HashSet::new();
        loop {
            pos = self.seq.normalize(pos);
            if !seen.insert(pos) {
                return Node::Dead;
            }
            let Some(instr) = self.seq.at(pos as usize) else {
                return Node::Dead;
            };
            let next = |d: u64| self.seq.normalize(pos.saturating_add(d));
            match instr {
                Instruction::Halt => return Node::Stop,
                Instruction::Jump(0) => return Node::Dead,
                Instruction::Jump(l) => pos = pos.saturating_add(*l),
                Instruction::Plain(b) => {
                    return Node::Act(Action::Basic(b.clone()), next(1), next(1))
                }
                Instruction::PosTest(b) => {
                    return Node::Act(Action::Basic(b.clone()), next(1), next(2))
                }
                Instruction::NegTest(b) => {
                    return Node::Act(Action::Basic(b.clone()), next(2), next(1))
                }
            }
        }
    }
}

impl Behaviour for RegularThread {
    type S = usize;

    fn root(&self) -> usize {
        RegularThread::root(self)
    }

    fn node(&self, s: &usize) -> Node<usize> {
        match self.state(*s) {
            State::Stop => Node::Stop,
            State::Dead => Node::Dead,
            State::Branch {
                action,
                on_true,
                on_false,
            } => Node::Act(action.clone(), *on_true, *on_false),
        }
    }
}

/// Bisimilarity of two deterministic behaviours by exploring pairs of states.
pub fn same_behaviour<A: Behaviour, B: Behaviour>(a: &A, b: &B) -> bool {
    let mut seen = HashSet::new();
    let mut queue = VecDeque::from([(a.root(), b.root())]);
    while let Some((x, y)) = queue.pop_front() {
        if !seen.insert((x.clone(), y.clone())) {
            continue;
        }
        match (a.node(&x), b.node(&y)) {
            (Node::Stop, Node::Stop) | (Node::Dead, Node::Dead) => {}
            (Node::Act(p, xt, xf), Node::Act(q, yt, yf)) if p == q => {
                queue.push_back((xt, yt));
                queue.push_back((xf, yf));
            }
            _ => return false,
        }
    }
    true
}

pub fn behaves_like_thread(t: &Term, thread: &RegularThread) -> bool {
    let seq = flatten(t);
    same_behaviour(
        &Exec {
            seq: &seq,
            start: 0,
        },
        thread,
    )
}

pub fn same_behaviour_terms(a: &Term, b: &Term) -> bool {
    let (fa, fb) = (flatten(a), flatten(b));
    same_behaviour(&Exec { seq: &fa, start: 0 }, &Exec { seq: &fb, start: 0 })
}

/// `#l ; t ; !^n`
pub fn in_context(t: &Flat, l: u64, n: usize) -> Flat {
    let mut prefix = vec![Instruction::Jump(l)];
    prefix.extend(t.prefix.iter().cloned());
    if t.is_finite() {
        prefix.extend(std::iter::repeat_n(Instruction::Halt, n));
    }
    Flat {
        prefix,
        period: t.period.clone(),
    }
}

/// The congruence definition checked literally for every `l <= max_l` and `n <= max_n`.
pub fn congruent_up_to(a: &Term, b: &Term, max_l: u64, max_n: usize) -> bool {
    let (fa, fb) = (flatten(a), flatten(b));
    (0..=max_n).all(|n| {
        (0..=max_l).all(|l| {
            let (ca, cb) = (in_context(&fa, l, n), in_context(&fb, l, n));
            same_behaviour(&Exec { seq: &ca, start: 0 }, &Exec { seq: &cb, start: 0 })
        })
    })
}

// ---------------------------------------------------------------------------------------
// random terms

pub fn basic(name: &str) -> BasicInstruction {
    BasicInstruction::named(name)
}

/// An instruction over the actions `a`, `b`, `c` and jumps up to `max_jump`.
pub fn random_instruction(rng: &mut impl Rng, max_jump: u64) -> Instruction {
    let name = *["a", "b", "c"].choose(rng).unwrap();
    match rng.random_range(0..10) {
        0..=1 => Instruction::Plain(basic(name)),
        2..=3 => Instruction::PosTest(basic(name)),
        4..=5 => Instruction::NegTest(basic(name)),
        6..=8 => Instruction::Jump(rng.random_range(0..=max_jump)),
        _ => Instruction::Halt,
    }
}

/// A term with at most `max_leaves` leaves, with repetitions at random places.
pub fn random_term(rng: &mut impl Rng, max_leaves: usize) -> Term {
    let leaves = rng.random_range(1..=max_leaves);
    term_of_size(rng, leaves)
}

fn term_of_size(rng: &mut impl Rng, leaves: usize) -> Term {
    let t = if leaves == 1 {
        Term::instr(random_instruction(rng, 5))
    } else {
        let left = rng.random_range(1..leaves);
        Term::concat(term_of_size(rng, left), term_of_size(rng, leaves - left))
    };
    if rng.random_bool(0.15) {
        Term::repeat(t)
    } else {
        t
    }
}

pub fn random_repetition_free(rng: &mut impl Rng, max_leaves: usize) -> Term {
    let n = rng.random_range(1..=max_leaves);
    let items: Vec<Instruction> = (0..n).map(|_| random_instruction(rng, 5)).collect();
    random_association(rng, items.into_iter().map(Term::instr).collect())
}

/// Random bracketing of a nonempty list.
pub fn random_association(rng: &mut impl Rng, mut items: Vec<Term>) -> Term {
    if items.len() == 1 {
        return items.pop().unwrap();
    }
    let cut = rng.random_range(1..items.len());
    let right = items.split_off(cut);
    Term::concat(
        random_association(rng, items),
        random_association(rng, right),
    )
}

pub fn random_flat(rng: &mut impl Rng, max_prefix: usize, max_period: usize) -> Flat {
    let m = rng.random_range(0..=max_prefix);
    let k = if rng.random_bool(0.5) {
        0
    } else {
        rng.random_range(1..=max_period)
    };
    let m = if m + k == 0 { 1 } else { m };
    Flat {
        prefix: (0..m).map(|_| random_instruction(rng, 4)).collect(),
        period: (0..k).map(|_| random_instruction(rng, 4)).collect(),
    }
}

// ---------------------------------------------------------------------------------------
// axiom-driven rewriting

/// A term for the same instruction sequence, written differently: random bracketing,
/// unfolded and rotated repetitions, powers inside repetitions, nested repetitions
/// and junk after a repetition.
pub fn rewrite_sequence(rng: &mut impl Rng, seq: &Flat) -> Term {
    let mut prefix: Vec<Instruction> = seq.prefix.clone();
    let mut period: Vec<Instruction> = seq.period.clone();
    if !period.is_empty() {
        // X* = X ; X*, and (X ; Y)* = X ; (Y ; X)*
        for _ in 0..rng.random_range(0..=2) {
            let j = rng.random_range(1..=period.len());
            prefix.extend(period[..j].iter().cloned());
            let k = period.len();
            period.rotate_left(j % k);
        }
    }
    let mut items: Vec<Term> = prefix.into_iter().map(Term::instr).collect();
    if !period.is_empty() {
        // (X^n)* = X*
        let copies = rng.random_range(1..=2);
        let body: Vec<Term> = std::iter::repeat_n(period, copies)
            .flatten()
            .map(Term::instr)
            .collect();
        let mut rep = Term::repeat(random_association(rng, body));
        if rng.random_bool(0.2) {
            rep = Term::repeat(rep);
        }
        items.push(rep);
        // X* ; Y = X*
        if rng.random_bool(0.3) {
            items.push(Term::instr(random_instruction(rng, 3)));
        }
    }
    random_association(rng, items)
}

fn literal(i: &Instruction) -> Option<u64> {
    match i {
        Instruction::Jump(l) => Some(*l),
        _ => None,
    }
}

/// Every sequence one jump rewrite away from `seq`, in either direction, plus the
/// representation changes that make further rewrites applicable.
pub fn jump_rewrites(seq: &Flat) -> Vec<Flat> {
    const CAP: u64 = 24;
    let mut out = Vec::new();
    let with = |prefix_side: bool, i: usize, l: u64| {
        let mut s = seq.clone();
        let part = if prefix_side {
            &mut s.prefix
        } else {
            &mut s.period
        };
        part[i] = Instruction::Jump(l);
        s
    };
    for prefix_side in [true, false] {
        let part = if prefix_side {
            &seq.prefix
        } else {
            &seq.period
        };
        for i in 0..part.len() {
            let Some(a) = literal(&part[i]) else { continue };
            for (j, instr) in part.iter().enumerate().skip(i + 1) {
                let Some(l) = literal(instr) else { continue };
                let d = (j - i) as u64;
                // #k+1 ; u ; #0 = #0 ; u ; #0
                if l == 0 && a == d {
                    out.push(with(prefix_side, i, 0));
                }
                if l == 0 && a == 0 {
                    out.push(with(prefix_side, i, d));
                }
                // #k+1 ; u ; #l = #l+k+1 ; u ; #l
                if l > 0 && a == d && d + l <= CAP {
                    out.push(with(prefix_side, i, d + l));
                }
                if l > 0 && a == d + l {
                    out.push(with(prefix_side, i, d));
                }
            }
        }
    }
    let k = seq.period.len() as u64;
    if k > 0 {
        // (#l+k+1 ; u)* = (#l ; u)*
        if let Some(a) = literal(&seq.period[0]) {
            if a >= k {
                out.push(with(false, 0, a - k));
            }
            if a + k <= CAP {
                out.push(with(false, 0, a + k));
            }
        }
        // #l+k+k'+2 ; u ; v* = #l+k+1 ; u ; v*
        let m = seq.prefix.len();
        for i in 0..m {
            let Some(a) = literal(&seq.prefix[i]) else {
                continue;
            };
            let reach = (m - i) as u64;
            if a >= reach + k {
                out.push(with(true, i, a - k));
            }
            if a >= reach && a + k <= CAP {
                out.push(with(true, i, a + k));
            }
        }
        // same sequence, other representation
        let mut unrolled = seq.clone();
        unrolled.prefix.push(unrolled.period[0].clone());
        unrolled.period.rotate_left(1);
        out.push(unrolled);
        if seq.prefix.last() == seq.period.last() {
            let mut rolled = seq.clone();
            rolled.prefix.pop();
            rolled.period.rotate_right(1);
            if !rolled.prefix.is_empty() || !rolled.period.is_empty() {
                out.push(rolled);
            }
        }
    }
    out
}

/// A random walk of jump rewrites.
pub fn rewrite_jumps(rng: &mut impl Rng, seq: &Flat, steps: usize) -> Flat {
    let mut seq = seq.clone();
    for _ in 0..steps {
        let options = jump_rewrites(&seq);
        let Some(next) = options.choose(rng) else {
            break;
        };
        seq = next.clone();
    }
    seq
}

/// Two terms derivably equal by the axioms for concatenation and repetition, with at
/// most `max_leaves` leaves each.
pub fn sequence_congruent_pair(rng: &mut impl Rng, max_leaves: usize) -> (Term, Term) {
    loop {
        let base = random_flat(rng, 5, 3);
        let a = rewrite_sequence(rng, &base);
        let b = rewrite_sequence(rng, &base);
        if a.leaf_count() <= max_leaves && b.leaf_count() <= max_leaves {
            return (a, b);
        }
    }
}

/// Two terms derivably equal when the jump axioms are added.
pub fn structurally_congruent_pair(rng: &mut impl Rng, max_leaves: usize) -> (Term, Term) {
    loop {
        let base = random_flat(rng, 5, 3);
        let steps = rng.random_range(1..=6);
        let left = rewrite_jumps(rng, &base, steps);
        let a = rewrite_sequence(rng, &left);
        let steps = rng.random_range(0..=6);
        let right = rewrite_jumps(rng, &base, steps);
        let b = rewrite_sequence(rng, &right);
        if a.leaf_count() <= max_leaves && b.leaf_count() <= max_leaves {
            return (a, b);
        }
    }
}

// ---------------------------------------------------------------------------------------
// proptest strategies

pub fn instruction_strategy() -> impl Strategy<Value = Instruction> {
    let name = prop::sample::select(vec!["a", "b", "c"]);
    prop_oneof![
        name.clone().prop_map(|n| Instruction::Plain(basic(n))),
        name.clone().prop_map(|n| Instruction::PosTest(basic(n))),
        name.prop_map(|n| Instruction::NegTest(basic(n))),
        (0u64..6).prop_map(Instruction::Jump),
        Just(Instruction::Halt),
    ]
}

pub fn term_strategy(max_leaves: usize) -> impl Strategy<Value = Term> {
    instruction_strategy()
        .prop_map(Term::instr)
        .prop_recursive(6, max_leaves as u32, 2, |inner| {
            prop_oneof![
                3 => (inner.clone(), inner.clone()).prop_map(|(a, b)| Term::concat(a, b)),
                1 => inner.prop_map(Term::repeat),
            ]
        })
        .prop_filter("too many leaves", move |t| t.leaf_count() <= max_leaves)
}

pub fn repetition_free_strategy(max_leaves: usize) -> impl Strategy<Value = Term> {
    prop::collection::vec(instruction_strategy(), 1..=max_leaves)
        .prop_map(|v| Term::from_instructions(v).unwrap())
}

/// Seeds for the generators above, so that proptest drives them.
pub fn seed() -> impl Strategy<Value = u64> {
    any::<u64>()
}

pub fn rng_from(seed: u64) -> rand_chacha::ChaCha8Rng {
    use rand::SeedableRng;
    rand_chacha::ChaCha8Rng::seed_from_u64(seed)
}

// ---------------------------------------------------------------------------------------
// threads

pub fn random_thread(rng: &mut impl Rng, max_states: usize) -> RegularThread {
    let n = rng.random_range(1..=max_states);
    let states = (0..n)
        .map(|_| match rng.random_range(0..10) {
            0 => State::Stop,
            1 => State::Dead,
            r => {
                let action = match r {
                    2 => Action::Tau,
                    _ => Action::Basic(basic(["a", "b"].choose(rng).unwrap())),
                };
                State::branch(action, rng.random_range(0..n), rng.random_range(0..n))
            }
        })
        .collect();
    RegularThread::new(states, rng.random_range(0..n)).unwrap()
}

// ---------------------------------------------------------------------------------------
// register programs

pub fn register(focus: Focus, reply: UnaryFn, effect: UnaryFn) -> BasicInstruction {
    BasicInstruction::Register(RegisterOp::new(focus, reply, effect))
}

pub fn is_core(op: &RegisterOp) -> bool {
    op.reply == op.effect && op.reply != UnaryFn::Cm
}

/// A repetition-free program over the given foci, with at most `max_non_core`
/// register instructions outside `0/0`, `1/1`, `i/i`.
pub fn random_register_program(
    rng: &mut impl Rng,
    foci: &[Focus],
    max_len: usize,
    max_non_core: usize,
) -> Term {
    let len = rng.random_range(1..=max_len);
    let mut budget = max_non_core;
    let mut code = Vec::with_capacity(len);
    for pos in 0..len {
        let last = pos + 1 == len;
        let instr = match rng.random_range(0..10) {
            _ if last && rng.random_bool(0.8) => Instruction::Halt,
            0 => Instruction::Halt,
            1 => Instruction::Jump(rng.random_range(0..=4)),
            _ if foci.is_empty() => Instruction::Halt,
            _ => {
                let focus = foci.choose(rng).unwrap().clone();
                let (reply, effect) = if budget > 0 && rng.random_bool(0.4) {
                    budget -= 1;
                    loop {
                        let p = *UnaryFn::ALL.choose(rng).unwrap();
                        let q = *UnaryFn::ALL.choose(rng).unwrap();
                        if !(p == q && p != UnaryFn::Cm) {
                            break (p, q);
                        }
                    }
                } else {
                    let g = *[UnaryFn::F0, UnaryFn::T1, UnaryFn::Id].choose(rng).unwrap();
                    (g, g)
                };
                let b = register(focus, reply, effect);
                match rng.random_range(0..3) {
                    0 => Instruction::Plain(b),
                    1 => Instruction::PosTest(b),
                    _ => Instruction::NegTest(b),
                }
            }
        };
        code.push(instr);
    }
    Term::from_instructions(code).unwrap()
}

pub fn io_foci(n: usize, m: usize, k: usize) -> Vec<Focus> {
    let mut foci: Vec<Focus> = (1..=n as u32).map(Focus::input).collect();
    foci.extend((1..=m as u32).map(Focus::output));
    foci.extend((1..=k as u32).map(Focus::aux));
    foci
}

pub type Registers = BTreeMap<Focus, RegisterContent>;

/// Runs a repetition-free program; `None` when it does not terminate properly, which
/// includes touching a missing or inoperative register.
pub fn run_program(code: &[&Instruction], mut regs: Registers) -> Option<Registers> {
    let mut pc = 0usize;
    loop {
        let instr = code.get(pc)?;
        let (b, proceed): (&BasicInstruction, fn(bool) -> bool) = match instr {
            Instruction::Halt => return Some(regs),
            Instruction::Jump(0) => return None,
            Instruction::Jump(l) => {
                pc = pc.checked_add(usize::try_from(*l).ok()?)?;
                continue;
            }
            Instruction::Plain(b) => (b, |_| true),
            Instruction::PosTest(b) => (b, |r| r),
            Instruction::NegTest(b) => (b, |r| !r),
        };
        let op = b.as_register()?;
        let old = match regs.get(&op.focus)? {
            RegisterContent::Zero => false,
            RegisterContent::One => true,
            RegisterContent::Div => return None,
        };
        let reply = op.reply.eval(old);
        regs.insert(
            op.focus.clone(),
            RegisterContent::from_bool(op.effect.eval(old)),
        );
        pc += if proceed(reply) { 1 } else { 2 };
    }
}

/// The partial function a program computes: inputs and auxiliaries preset, outputs
/// starting at 0, and a row defined exactly when the run terminates with an output.
pub fn table_by_running(t: &Term, n: usize, m: usize, k: usize) -> Vec<Option<Vec<bool>>> {
    let code = t.leaves();
    (0..1usize << n)
        .map(|row| {
            let mut regs = Registers::new();
            for i in 0..n {
                let bit = row >> (n - 1 - i) & 1 == 1;
                regs.insert(Focus::input(i as u32 + 1), RegisterContent::from_bool(bit));
            }
            for i in 1..=m as u32 {
                regs.insert(Focus::output(i), RegisterContent::Zero);
            }
            for i in 1..=k as u32 {
                regs.insert(Focus::aux(i), RegisterContent::Zero);
            }
            let end = run_program(&code, regs)?;
            if m == 0 {
                return None;
            }
            Some(
                (1..=m as u32)
                    .map(|i| end[&Focus::output(i)] == RegisterContent::One)
                    .collect(),
            )
        })
        .collect()
}

pub fn random_table(rng: &mut impl Rng, n: usize, m: usize, undefined: f64) -> FunctionTable {
    FunctionTable::from_fn(n, m, |_| {
        (!rng.random_bool(undefined)).then(|| (0..m).map(|_| rng.random_bool(0.5)).collect())
    })
}

/// Every family over `foci` in which each focus is absent, 0, 1 or inoperative.
pub fn all_families(foci: &[Focus]) -> Vec<Registers> {
    let mut out = vec![Registers::new()];
    for f in foci {
        let mut next = Vec::with_capacity(out.len() * 4);
        for regs in &out {
            next.push(regs.clone());
            for c in [
                RegisterContent::Zero,
                RegisterContent::One,
                RegisterContent::Div,
            ] {
                let mut r = regs.clone();
                r.insert(f.clone(), c);
                next.push(r);
            }
        }
        out = next;
    }
    out
}

/// Every program of length `len` over core instructions, in-range jumps and `!`.
pub fn all_programs(conv: &IoConvention, len: usize) -> Vec<Term> {
    let mut letters = vec![Instruction::Halt];
    letters.extend((0..len as u64).map(Instruction::Jump));
    for f in io_foci(conv.n, conv.m, conv.k) {
        for g in [UnaryFn::F0, UnaryFn::T1, UnaryFn::Id] {
            let b = register(f.clone(), g, g);
            letters.push(Instruction::Plain(b.clone()));
            letters.push(Instruction::PosTest(b.clone()));
            letters.push(Instruction::NegTest(b));
        }
    }
    let mut programs: Vec<Vec<Instruction>> = vec![Vec::new()];
    for _ in 0..len {
        programs = programs
            .into_iter()
            .flat_map(|p| {
                letters.iter().map(move |l| {
                    let mut q = p.clone();
                    q.push(l.clone());
                    q
                })
            })
            .collect();
    }
    programs
        .into_iter()
        .map(|p| Term::from_instructions(p).unwrap())
        .collect()
}
