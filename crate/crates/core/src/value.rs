//! Target quantales: the value algebras series map into.
//!
//! A [`Quantale`] is a finite complete lattice with an associative
//! multiplication. `mult` returns `Option` so partial targets (separating
//! vectors) share the trait; total targets never return `None`. All targets
//! here are finite and enumerable, which keeps every law check exhaustive
//! at the value level.

use rand::Rng;

/// A finite (complete) lattice with an associative multiplication.
///
/// `mult` distributes over joins for total targets; partial targets are
/// exercised through `convolve_partial`, which discards undefined summands.
pub trait Quantale {
    type V: Clone + Eq + std::fmt::Debug;

    fn bottom(&self) -> Self::V;
    fn top(&self) -> Self::V;
    fn leq(&self, a: &Self::V, b: &Self::V) -> bool;
    fn join2(&self, a: &Self::V, b: &Self::V) -> Self::V;
    fn meet2(&self, a: &Self::V, b: &Self::V) -> Self::V;
    /// Multiplication; `None` encodes ⊥ for partial targets.
    fn mult(&self, a: &Self::V, b: &Self::V) -> Option<Self::V>;
    /// Multiplicative unit, when the target is unital.
    fn unit(&self) -> Option<Self::V>;
    fn commutative(&self) -> bool;
    /// Whether `mult` is total.
    fn is_total(&self) -> bool;
    /// All values, for exhaustive checks and sampling.
    fn enumerate(&self) -> Vec<Self::V>;
    fn fmt_value(&self, v: &Self::V) -> String;

    /// Boolean-algebra targets support implication (for the magic wand).
    fn is_boolean(&self) -> bool {
        false
    }

    /// Heyting/Boolean implication `a ⇒ b`; `None` on non-Boolean targets.
    fn implies(&self, _a: &Self::V, _b: &Self::V) -> Option<Self::V> {
        None
    }

    fn join_all<I: IntoIterator<Item = Self::V>>(&self, vs: I) -> Self::V {
        vs.into_iter().fold(self.bottom(), |a, b| self.join2(&a, &b))
    }

    fn meet_all<I: IntoIterator<Item = Self::V>>(&self, vs: I) -> Self::V {
        vs.into_iter().fold(self.top(), |a, b| self.meet2(&a, &b))
    }

    fn random_value(&self, rng: &mut dyn rand::RngCore) -> Self::V {
        let all = self.enumerate();
        all[rng.gen_range(0..all.len())].clone()
    }
}

/// The Boolean quantale 𝔹 = ({0,1}, ∨, ∧).
#[derive(Debug, Clone, Copy, Default)]
pub struct BoolQ;

impl Quantale for BoolQ {
    type V = bool;

    fn bottom(&self) -> bool {
        false
    }
    fn top(&self) -> bool {
        true
    }
    fn leq(&self, a: &bool, b: &bool) -> bool {
        !a | b
    }
    fn join2(&self, a: &bool, b: &bool) -> bool {
        a | b
    }
    fn meet2(&self, a: &bool, b: &bool) -> bool {
        a & b
    }
    fn mult(&self, a: &bool, b: &bool) -> Option<bool> {
        Some(a & b)
    }
    fn unit(&self) -> Option<bool> {
        Some(true)
    }
    fn commutative(&self) -> bool {
        true
    }
    fn is_total(&self) -> bool {
        true
    }
    fn enumerate(&self) -> Vec<bool> {
        vec![false, true]
    }
    fn fmt_value(&self, v: &bool) -> String {
        if *v { "1" } else { "0" }.to_string()
    }
    fn is_boolean(&self) -> bool {
        true
    }
    fn implies(&self, a: &bool, b: &bool) -> Option<bool> {
        Some(!a | b)
    }
}

/// Value of the capped tropical (max-plus) quantale.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord)]
pub enum Trop {
    /// Annihilating bottom, strictly below Fin(0).
    Bot,
    Fin(u32),
    Inf,
}

/// Capped naturals with ∞ top and an adjoined annihilating bottom:
/// join = max, meet = min, mult = saturating addition (sums exceeding the
/// cap collapse to ∞). Multiset multiplicities live in the Fin fragment.
#[derive(Debug, Clone, Copy)]
pub struct TropicalQ {
    pub cap: u32,
}

impl TropicalQ {
    pub fn new(cap: u32) -> Self {
        TropicalQ { cap }
    }
}

impl Quantale for TropicalQ {
    type V = Trop;

    fn bottom(&self) -> Trop {
        Trop::Bot
    }
    fn top(&self) -> Trop {
        Trop::Inf
    }
    fn leq(&self, a: &Trop, b: &Trop) -> bool {
        a <= b
    }
    fn join2(&self, a: &Trop, b: &Trop) -> Trop {
        *a.max(b)
    }
    fn meet2(&self, a: &Trop, b: &Trop) -> Trop {
        *a.min(b)
    }
    fn mult(&self, a: &Trop, b: &Trop) -> Option<Trop> {
        Some(match (a, b) {
            (Trop::Bot, _) | (_, Trop::Bot) => Trop::Bot,
            (Trop::Inf, _) | (_, Trop::Inf) => Trop::Inf,
            (Trop::Fin(x), Trop::Fin(y)) => {
                let s = x + y;
                if s > self.cap {
                    Trop::Inf
                } else {
                    Trop::Fin(s)
                }
            }
        })
    }
    fn unit(&self) -> Option<Trop> {
        Some(Trop::Fin(0))
    }
    fn commutative(&self) -> bool {
        true
    }
    fn is_total(&self) -> bool {
        true
    }
    fn enumerate(&self) -> Vec<Trop> {
        let mut vs = vec![Trop::Bot];
        vs.extend((0..=self.cap).map(Trop::Fin));
        vs.push(Trop::Inf);
        vs
    }
    fn fmt_value(&self, v: &Trop) -> String {
        match v {
            Trop::Bot => "⊥".to_string(),
            Trop::Fin(n) => n.to_string(),
            Trop::Inf => "∞".to_string(),
        }
    }
}

/// Vectors over capped naturals with the separating (zero-test) product:
/// `a ∗ b` is defined iff supports are disjoint, and then equals `a + b`.
/// Lattice is pointwise max/min; the zero vector is the unit.
#[derive(Debug, Clone, Copy)]
pub struct VectorQ {
    pub dim: usize,
    pub cap: u32,
}

impl VectorQ {
    pub fn new(dim: usize, cap: u32) -> Self {
        VectorQ { dim, cap }
    }
}

impl Quantale for VectorQ {
    type V = Vec<u32>;

    fn bottom(&self) -> Vec<u32> {
        vec![0; self.dim]
    }
    fn top(&self) -> Vec<u32> {
        vec![self.cap; self.dim]
    }
    fn leq(&self, a: &Vec<u32>, b: &Vec<u32>) -> bool {
        a.iter().zip(b).all(|(x, y)| x <= y)
    }
    fn join2(&self, a: &Vec<u32>, b: &Vec<u32>) -> Vec<u32> {
        a.iter().zip(b).map(|(x, y)| *x.max(y)).collect()
    }
    fn meet2(&self, a: &Vec<u32>, b: &Vec<u32>) -> Vec<u32> {
        a.iter().zip(b).map(|(x, y)| *x.min(y)).collect()
    }
    fn mult(&self, a: &Vec<u32>, b: &Vec<u32>) -> Option<Vec<u32>> {
        if a.iter().zip(b).all(|(x, y)| *x == 0 || *y == 0) {
            Some(a.iter().zip(b).map(|(x, y)| x + y).collect())
        } else {
            None
        }
    }
    fn unit(&self) -> Option<Vec<u32>> {
        Some(vec![0; self.dim])
    }
    fn commutative(&self) -> bool {
        true
    }
    fn is_total(&self) -> bool {
        false
    }
    fn enumerate(&self) -> Vec<Vec<u32>> {
        let mut out = vec![Vec::new()];
        for _ in 0..self.dim {
            out = out
                .into_iter()
                .flat_map(|v| {
                    (0..=self.cap).map(move |x| {
                        let mut w = v.clone();
                        w.push(x);
                        w
                    })
                })
                .collect();
        }
        out
    }
    fn fmt_value(&self, v: &Vec<u32>) -> String {
        let parts: Vec<String> = v.iter().map(|x| x.to_string()).collect();
        format!("({})", parts.join(","))
    }
}

/// Truncated-language values: sets of words of length ≤ cap over a small
/// alphabet, as bitmasks over the word enumeration. Multiplication is
/// elementwise concatenation with over-length results dropped (the quotient
/// that keeps matrix star stabilizing).
#[derive(Debug, Clone)]
pub struct LangQ {
    words: Vec<Vec<u8>>,
    concat: Vec<Vec<Option<usize>>>,
    alphabet: Vec<char>,
}

impl LangQ {
    /// Words of length ≤ `cap` over `alphabet`, shortlex order, ε first.
    pub fn new(alphabet: &[char], cap: usize) -> Self {
        let k = alphabet.len();
        assert!(k >= 1);
        let mut words: Vec<Vec<u8>> = vec![Vec::new()];
        let mut prev: Vec<Vec<u8>> = vec![Vec::new()];
        for _ in 0..cap {
            let mut next = Vec::new();
            for w in &prev {
                for a in 0..k as u8 {
                    let mut v = w.clone();
                    v.push(a);
                    next.push(v);
                }
            }
            words.extend(next.iter().cloned());
            prev = next;
        }
        assert!(words.len() <= 64, "language value space exceeds 64 words");
        let index = |w: &[u8]| words.iter().position(|v| v.as_slice() == w);
        let concat = words
            .iter()
            .map(|x| {
                words
                    .iter()
                    .map(|y| {
                        if x.len() + y.len() > cap {
                            None
                        } else {
                            let mut v = x.clone();
                            v.extend_from_slice(y);
                            index(&v)
                        }
                    })
                    .collect()
            })
            .collect();
        LangQ {
            words,
            concat,
            alphabet: alphabet.to_vec(),
        }
    }

    pub fn word_count(&self) -> usize {
        self.words.len()
    }

    /// Bitmask of a single word given as a string over the alphabet.
    pub fn word(&self, s: &str) -> u64 {
        let enc: Vec<u8> = s
            .chars()
            .map(|c| {
                self.alphabet
                    .iter()
                    .position(|a| *a == c)
                    .expect("letter outside alphabet") as u8
            })
            .collect();
        let i = self
            .words
            .iter()
            .position(|w| *w == enc)
            .expect("word exceeds length cap");
        1u64 << i
    }

    /// Bitmask of a finite set of words.
    pub fn lang(&self, ws: &[&str]) -> u64 {
        ws.iter().map(|w| self.word(w)).fold(0, |a, b| a | b)
    }

    fn word_string(&self, i: usize) -> String {
        if self.words[i].is_empty() {
            "ε".to_string()
        } else {
            self.words[i]
                .iter()
                .map(|a| self.alphabet[*a as usize])
                .collect()
        }
    }
}

impl Quantale for LangQ {
    type V = u64;

    fn bottom(&self) -> u64 {
        0
    }
    fn top(&self) -> u64 {
        if self.words.len() == 64 {
            u64::MAX
        } else {
            (1u64 << self.words.len()) - 1
        }
    }
    fn leq(&self, a: &u64, b: &u64) -> bool {
        a & !b == 0
    }
    fn join2(&self, a: &u64, b: &u64) -> u64 {
        a | b
    }
    fn meet2(&self, a: &u64, b: &u64) -> u64 {
        a & b
    }
    fn mult(&self, a: &u64, b: &u64) -> Option<u64> {
        let mut out = 0u64;
        let mut x = *a;
        while x != 0 {
            let i = x.trailing_zeros() as usize;
            x &= x - 1;
            let row = &self.concat[i];
            let mut y = *b;
            while y != 0 {
                let j = y.trailing_zeros() as usize;
                y &= y - 1;
                if let Some(k) = row[j] {
                    out |= 1u64 << k;
                }
            }
        }
        Some(out)
    }
    fn unit(&self) -> Option<u64> {
        Some(1)
    }
    fn commutative(&self) -> bool {
        false
    }
    fn is_total(&self) -> bool {
        true
    }
    fn enumerate(&self) -> Vec<u64> {
        assert!(
            self.words.len() <= 20,
            "language value space too large to enumerate"
        );
        (0..(1u64 << self.words.len())).collect()
    }
    fn fmt_value(&self, v: &u64) -> String {
        let mut parts = Vec::new();
        let mut x = *v;
        while x != 0 {
            let i = x.trailing_zeros() as usize;
            x &= x - 1;
            parts.push(self.word_string(i));
        }
        format!("{{{}}}", parts.join(","))
    }
    fn is_boolean(&self) -> bool {
        true
    }
    fn implies(&self, a: &u64, b: &u64) -> Option<u64> {
        Some(!a & self.top() | b)
    }
    fn random_value(&self, rng: &mut dyn rand::RngCore) -> u64 {
        rng.gen::<u64>() & self.top()
    }
}

/// Powerset of a finite partial semigroup under the complex product:
/// `A·B = {a·b | a ∈ A, b ∈ B, a·b defined}`. Values are bitmasks over the
/// base carrier (≤ 64 elements). Total even when the base is partial.
#[derive(Debug, Clone)]
pub struct PowersetQ {
    size: usize,
    compose: Vec<Option<u32>>,
    unit_mask: Option<u64>,
    commutative: bool,
    labels: Vec<String>,
    /// Full product table, precomputed for small bases (hot in frame sweeps).
    table: Option<Vec<u64>>,
}

impl PowersetQ {
    pub fn new(base: &crate::algebra::Carrier) -> Self {
        let size = base.size();
        assert!(size <= 64, "powerset target needs base ≤ 64 elements");
        let mut compose = vec![None; size * size];
        for x in base.elements() {
            for y in base.elements() {
                compose[x.index() * size + y.index()] =
                    base.compose(x, y).element().map(|e| e.0);
            }
        }
        let labels = base.elements().map(|e| base.label(e)).collect();
        let mut q = PowersetQ {
            size,
            compose,
            unit_mask: base.unit().map(|u| 1u64 << u.index()),
            commutative: base.commutative_hint(),
            labels,
            table: None,
        };
        if size <= 9 {
            let n = 1usize << size;
            let mut table = vec![0u64; n * n];
            for a in 0..n as u64 {
                for b in 0..n as u64 {
                    table[(a as usize) << size | b as usize] = q.mult_slow(a, b);
                }
            }
            q.table = Some(table);
        }
        q
    }

    pub fn base_size(&self) -> usize {
        self.size
    }

    fn mult_slow(&self, a: u64, b: u64) -> u64 {
        let mut out = 0u64;
        let mut x = a;
        while x != 0 {
            let i = x.trailing_zeros() as usize;
            x &= x - 1;
            let mut y = b;
            while y != 0 {
                let j = y.trailing_zeros() as usize;
                y &= y - 1;
                if let Some(k) = self.compose[i * self.size + j] {
                    out |= 1u64 << k;
                }
            }
        }
        out
    }

    /// Table-backed product (same as `mult`, but without the `Option`).
    pub fn product(&self, a: u64, b: u64) -> u64 {
        match &self.table {
            Some(t) => t[(a as usize) << self.size | b as usize],
            None => self.mult_slow(a, b),
        }
    }
}

impl Quantale for PowersetQ {
    type V = u64;

    fn bottom(&self) -> u64 {
        0
    }
    fn top(&self) -> u64 {
        if self.size == 64 {
            u64::MAX
        } else {
            (1u64 << self.size) - 1
        }
    }
    fn leq(&self, a: &u64, b: &u64) -> bool {
        a & !b == 0
    }
    fn join2(&self, a: &u64, b: &u64) -> u64 {
        a | b
    }
    fn meet2(&self, a: &u64, b: &u64) -> u64 {
        a & b
    }
    fn mult(&self, a: &u64, b: &u64) -> Option<u64> {
        Some(self.product(*a, *b))
    }
    fn unit(&self) -> Option<u64> {
        self.unit_mask
    }
    fn commutative(&self) -> bool {
        self.commutative
    }
    fn is_total(&self) -> bool {
        true
    }
    fn enumerate(&self) -> Vec<u64> {
        assert!(
            self.size <= 20,
            "powerset value space too large to enumerate"
        );
        (0..(1u64 << self.size)).collect()
    }
    fn fmt_value(&self, v: &u64) -> String {
        let mut parts = Vec::new();
        let mut x = *v;
        while x != 0 {
            let i = x.trailing_zeros() as usize;
            x &= x - 1;
            parts.push(self.labels[i].clone());
        }
        format!("{{{}}}", parts.join(","))
    }
    fn is_boolean(&self) -> bool {
        true
    }
    fn implies(&self, a: &u64, b: &u64) -> Option<u64> {
        Some(!a & self.top() | b)
    }
    fn random_value(&self, rng: &mut dyn rand::RngCore) -> u64 {
        rng.gen::<u64>() & self.top()
    }
}

/// Lifts a quantale by adjoining ⊥ = `None` below everything: join is
/// `None`-neutral, meet is `None`-absorbing, mult is Kleisli (any `None`
/// factor or undefined inner product yields `None`). Total by construction;
/// convolution over `OptionQ<Q>` is exactly `convolve_partial` over `Q`.
#[derive(Debug, Clone)]
pub struct OptionQ<Q: Quantale> {
    pub inner: Q,
}

impl<Q: Quantale> OptionQ<Q> {
    pub fn new(inner: Q) -> Self {
        OptionQ { inner }
    }
}

impl<Q: Quantale> Quantale for OptionQ<Q> {
    type V = Option<Q::V>;

    fn bottom(&self) -> Option<Q::V> {
        None
    }
    fn top(&self) -> Option<Q::V> {
        Some(self.inner.top())
    }
    fn leq(&self, a: &Option<Q::V>, b: &Option<Q::V>) -> bool {
        match (a, b) {
            (None, _) => true,
            (Some(_), None) => false,
            (Some(x), Some(y)) => self.inner.leq(x, y),
        }
    }
    fn join2(&self, a: &Option<Q::V>, b: &Option<Q::V>) -> Option<Q::V> {
        match (a, b) {
            (None, x) | (x, None) => x.clone(),
            (Some(x), Some(y)) => Some(self.inner.join2(x, y)),
        }
    }
    fn meet2(&self, a: &Option<Q::V>, b: &Option<Q::V>) -> Option<Q::V> {
        match (a, b) {
            (None, _) | (_, None) => None,
            (Some(x), Some(y)) => Some(self.inner.meet2(x, y)),
        }
    }
    fn mult(&self, a: &Option<Q::V>, b: &Option<Q::V>) -> Option<Option<Q::V>> {
        Some(match (a, b) {
            (Some(x), Some(y)) => self.inner.mult(x, y),
            _ => None,
        })
    }
    fn unit(&self) -> Option<Option<Q::V>> {
        self.inner.unit().map(Some)
    }
    fn commutative(&self) -> bool {
        self.inner.commutative()
    }
    fn is_total(&self) -> bool {
        true
    }
    fn enumerate(&self) -> Vec<Option<Q::V>> {
        let mut vs = vec![None];
        vs.extend(self.inner.enumerate().into_iter().map(Some));
        vs
    }
    fn fmt_value(&self, v: &Option<Q::V>) -> String {
        match v {
            None => "⊥".to_string(),
            Some(x) => self.inner.fmt_value(x),
        }
    }
}

/// Exhaustively check the quantale axioms on an enumerable target:
/// lattice laws, associativity (Kleisli for partial mult), unit laws,
/// annihilation and binary distributivity (total targets only). Returns
/// human-readable violation descriptions; empty = all pass.
pub fn check_value_axioms<Q: Quantale>(q: &Q) -> Vec<String> {
    let vs = q.enumerate();
    let mut bad = Vec::new();
    let fmt = |v: &Q::V| q.fmt_value(v);

    for a in &vs {
        if !q.leq(&q.bottom(), a) || !q.leq(a, &q.top()) {
            bad.push(format!("bounds fail at {}", fmt(a)));
        }
        for b in &vs {
            let j = q.join2(a, b);
            let m = q.meet2(a, b);
            if !q.leq(a, &j) || !q.leq(b, &j) || !q.leq(&m, a) || !q.leq(&m, b) {
                bad.push(format!("lattice bounds fail at {}, {}", fmt(a), fmt(b)));
            }
            if q.join2(&j, b) != j || q.meet2(&m, a) != m {
                bad.push(format!("idempotence fails at {}, {}", fmt(a), fmt(b)));
            }
            if j != q.join2(b, a) || m != q.meet2(b, a) {
                bad.push(format!("lattice symmetry fails at {}, {}", fmt(a), fmt(b)));
            }
        }
    }

    for a in &vs {
        for b in &vs {
            for c in &vs {
                let lhs = q.mult(a, b).and_then(|ab| q.mult(&ab, c));
                let rhs = q.mult(b, c).and_then(|bc| q.mult(a, &bc));
                if lhs != rhs {
                    bad.push(format!(
                        "associativity fails at {}, {}, {}",
                        fmt(a),
                        fmt(b),
                        fmt(c)
                    ));
                }
                if q.is_total() {
                    let ambc = q.mult(a, &q.join2(b, c)).unwrap();
                    let dist = q.join2(&q.mult(a, b).unwrap(), &q.mult(a, c).unwrap());
                    if ambc != dist {
                        bad.push(format!(
                            "left distributivity fails at {}, {}, {}",
                            fmt(a),
                            fmt(b),
                            fmt(c)
                        ));
                    }
                    let bcma = q.mult(&q.join2(b, c), a).unwrap();
                    let dist = q.join2(&q.mult(b, a).unwrap(), &q.mult(c, a).unwrap());
                    if bcma != dist {
                        bad.push(format!(
                            "right distributivity fails at {}, {}, {}",
                            fmt(a),
                            fmt(b),
                            fmt(c)
                        ));
                    }
                }
            }
        }
    }

    if q.is_total() {
        for a in &vs {
            let l = q.mult(&q.bottom(), a).unwrap();
            let r = q.mult(a, &q.bottom()).unwrap();
            if l != q.bottom() || r != q.bottom() {
                bad.push(format!("annihilation fails at {}", fmt(a)));
            }
        }
    }

    if let Some(e) = q.unit() {
        for a in &vs {
            if q.mult(&e, a) != Some(a.clone()) || q.mult(a, &e) != Some(a.clone()) {
                bad.push(format!("unit fails at {}", fmt(a)));
            }
        }
    }

    if q.commutative() {
        for a in &vs {
            for b in &vs {
                if q.mult(a, b) != q.mult(b, a) {
                    bad.push(format!("commutativity fails at {}, {}", fmt(a), fmt(b)));
                }
            }
        }
    }

    bad
}
