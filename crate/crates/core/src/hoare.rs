//! Propositional Hoare logic over lifted quantales, Tarlecki-style:
//! validity of `{x} y {z}` is the inequality `x·y ≤ z` between power
//! series.
//!
//! Every rule here is a theorem of the quantale laws, so the rule suites
//! double as an oracle for the whole lifting: any reported violation is
//! an implementation bug, never a property of the instance. Premises are
//! built to hold by construction (pool tuples are completed with tight or
//! join-padded derived series), so each checked tuple genuinely exercises
//! its rule instead of passing vacuously.

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::algebra::Carrier;
use crate::error::AlgebraError;
use crate::report::{CheckMode, LawReport};
use crate::series::{
    convolve, fmt_series, inf_family, series_leq, standard_pool, star, sum_family, PowerSeries,
    SuiteConfig,
};
use crate::value::Quantale;

/// Tarlecki validity of the Hoare triple `{pre} prog {post}`:
/// `pre·prog ≤ post`.
pub fn triple_valid<Q: Quantale>(
    c: &Carrier,
    q: &Q,
    pre: &PowerSeries<Q>,
    prog: &PowerSeries<Q>,
    post: &PowerSeries<Q>,
) -> Result<bool, AlgebraError> {
    if post.carrier_id() != c.id() {
        return Err(AlgebraError::MixedCarriers {
            left: post.carrier_id(),
            right: c.id(),
        });
    }
    let xy = convolve(c, q, pre, prog)?;
    Ok(series_leq(c, q, &xy, post))
}

/// Which validity predicate the rule harness asserts for conclusions.
/// `StrictControl` replaces ≤ by < and exists purely as a negative
/// control: it must make the sequential rule fail, proving the harness
/// is not vacuous.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub enum Validity {
    #[default]
    Standard,
    StrictControl,
}

/// Rule-checking harness for one unital lifted quantale. The generator
/// pool mirrors the lifted-law suite's (zero, unit, top, atoms, seeded
/// random series, a product, a sum).
pub struct HoareSuite<'a, Q: Quantale> {
    carrier: &'a Carrier,
    target: &'a Q,
    pool: Vec<PowerSeries<Q>>,
    names: Vec<String>,
    one: PowerSeries<Q>,
    config: SuiteConfig,
    validity: Validity,
    star_cap: usize,
}

impl<'a, Q: Quantale> HoareSuite<'a, Q> {
    pub fn new(
        carrier: &'a Carrier,
        target: &'a Q,
        one: PowerSeries<Q>,
        config: SuiteConfig,
    ) -> Result<Self, AlgebraError> {
        if !target.is_total() {
            return Err(AlgebraError::PartialTarget);
        }
        if one.carrier_id() != carrier.id() {
            return Err(AlgebraError::MixedCarriers {
                left: one.carrier_id(),
                right: carrier.id(),
            });
        }
        let (pool, names, _) = standard_pool(carrier, target, Some(one.clone()), config.seed);
        Ok(HoareSuite {
            carrier,
            target,
            pool,
            names,
            one,
            config,
            validity: Validity::Standard,
            star_cap: 16 * carrier.size() + 16,
        })
    }

    pub fn with_validity(mut self, validity: Validity) -> Self {
        self.validity = validity;
        self
    }

    fn mult(&self, f: &PowerSeries<Q>, g: &PowerSeries<Q>) -> PowerSeries<Q> {
        convolve(self.carrier, self.target, f, g).expect("total suite")
    }

    fn sum2(&self, f: &PowerSeries<Q>, g: &PowerSeries<Q>) -> PowerSeries<Q> {
        sum_family(self.carrier, self.target, &[f, g]).expect("same carrier")
    }

    fn meet2(&self, f: &PowerSeries<Q>, g: &PowerSeries<Q>) -> PowerSeries<Q> {
        inf_family(self.carrier, self.target, &[f, g]).expect("same carrier")
    }

    fn leq(&self, f: &PowerSeries<Q>, g: &PowerSeries<Q>) -> bool {
        series_leq(self.carrier, self.target, f, g)
    }

    fn star(&self, f: &PowerSeries<Q>) -> Result<PowerSeries<Q>, AlgebraError> {
        star(self.carrier, self.target, f, &self.one, self.star_cap)
    }

    /// The conclusion judgment under the configured validity.
    fn conclude(&self, pre: &PowerSeries<Q>, prog: &PowerSeries<Q>, post: &PowerSeries<Q>) -> bool {
        let xy = self.mult(pre, prog);
        let leq = self.leq(&xy, post);
        match self.validity {
            Validity::Standard => leq,
            Validity::StrictControl => leq && xy != *post,
        }
    }

    fn triple_witness(
        &self,
        vars: &[(&str, usize)],
        pre: &PowerSeries<Q>,
        prog: &PowerSeries<Q>,
        post: &PowerSeries<Q>,
    ) -> Vec<String> {
        let mut w: Vec<String> = vars
            .iter()
            .map(|(v, i)| format!("{v}={}", self.names[*i]))
            .collect();
        for (tag, s) in [("pre", pre), ("prog", prog), ("post", post)] {
            w.push(format!("{tag}={}", fmt_series(self.carrier, self.target, s)));
        }
        w.push(format!(
            "pre·prog={}",
            fmt_series(self.carrier, self.target, &self.mult(pre, prog))
        ));
        w
    }

    /// Drive one rule over exactly `budget` tuples of pool indices: the
    /// full index space first when it fits, topped up (or replaced) by
    /// seeded sampling.
    fn run_rule(
        &self,
        law: &str,
        arity: u32,
        salt: u64,
        mut check: impl FnMut(&[usize]) -> Result<Option<Vec<String>>, AlgebraError>,
    ) -> Result<LawReport, AlgebraError> {
        let len = self.pool.len();
        let budget = self.config.budget;
        let space = (len as u128).pow(arity);
        let mut checked = 0u64;
        let mut witness = None;
        if space <= budget as u128 {
            let mut idx = vec![0usize; arity as usize];
            'odometer: loop {
                checked += 1;
                if let Some(w) = check(&idx)? {
                    witness = Some(w);
                    break;
                }
                let mut k = 0;
                loop {
                    if k == idx.len() {
                        break 'odometer;
                    }
                    idx[k] += 1;
                    if idx[k] < len {
                        break;
                    }
                    idx[k] = 0;
                    k += 1;
                }
            }
        }
        if witness.is_none() {
            let mut rng = ChaCha8Rng::seed_from_u64(self.config.seed ^ salt);
            let mut idx = vec![0usize; arity as usize];
            while checked < budget {
                for slot in idx.iter_mut() {
                    *slot = rng.gen_range(0..len);
                }
                checked += 1;
                if let Some(w) = check(&idx)? {
                    witness = Some(w);
                    break;
                }
            }
        }
        let mode = CheckMode::Sampled {
            seed: self.config.seed,
            count: budget,
        };
        Ok(match witness {
            None => LawReport::pass(law, checked, mode),
            Some(w) => LawReport::fail(law, checked, mode, w),
        })
    }

    /// The five derivable rules of propositional Hoare logic: skip,
    /// weakening, choice, sequential composition, star.
    pub fn check_hoare_rules(&self) -> Result<Vec<LawReport>, AlgebraError> {
        let mut reports = Vec::new();

        // ⊢{x}1{x}
        reports.push(self.run_rule("hoare-skip", 1, 1, |ix| {
            let x = &self.pool[ix[0]];
            Ok((!self.conclude(x, &self.one, x))
                .then(|| self.triple_witness(&[("x", ix[0])], x, &self.one, x)))
        })?);

        // x₁ ≤ x₂, ⊢{x₂}y{z₂}, z₂ ≤ z₁ ⟹ ⊢{x₁}y{z₁}
        reports.push(self.run_rule("hoare-weakening", 4, 2, |ix| {
            let (x2, y, p, r) = (
                &self.pool[ix[0]],
                &self.pool[ix[1]],
                &self.pool[ix[2]],
                &self.pool[ix[3]],
            );
            let x1 = self.meet2(x2, p);
            let z2 = self.mult(x2, y);
            let z1 = self.sum2(&z2, r);
            debug_assert!(self.leq(&x1, x2) && self.leq(&z2, &z1));
            Ok((!self.conclude(&x1, y, &z1)).then(|| {
                self.triple_witness(&[("x2", ix[0]), ("y", ix[1]), ("p", ix[2]), ("r", ix[3])], &x1, y, &z1)
            }))
        })?);

        // ⊢{x}y₁{z}, ⊢{x}y₂{z} ⟹ ⊢{x}y₁+y₂{z}
        reports.push(self.run_rule("hoare-choice", 4, 3, |ix| {
            let (x, y1, y2, r) = (
                &self.pool[ix[0]],
                &self.pool[ix[1]],
                &self.pool[ix[2]],
                &self.pool[ix[3]],
            );
            let z = self.sum2(&self.sum2(&self.mult(x, y1), &self.mult(x, y2)), r);
            let prog = self.sum2(y1, y2);
            Ok((!self.conclude(x, &prog, &z)).then(|| {
                self.triple_witness(&[("x", ix[0]), ("y1", ix[1]), ("y2", ix[2]), ("r", ix[3])], x, &prog, &z)
            }))
        })?);

        // ⊢{w}x₁{z}, ⊢{z}x₂{y} ⟹ ⊢{w}x₁·x₂{y}
        reports.push(self.run_rule("hoare-sequential", 5, 4, |ix| {
            let (w, x1, x2, r1, r2) = (
                &self.pool[ix[0]],
                &self.pool[ix[1]],
                &self.pool[ix[2]],
                &self.pool[ix[3]],
                &self.pool[ix[4]],
            );
            let z = self.sum2(&self.mult(w, x1), r1);
            let y = self.sum2(&self.mult(&z, x2), r2);
            debug_assert!(self.leq(&self.mult(w, x1), &z) && self.leq(&self.mult(&z, x2), &y));
            let prog = self.mult(x1, x2);
            Ok((!self.conclude(w, &prog, &y)).then(|| {
                self.triple_witness(
                    &[("w", ix[0]), ("x1", ix[1]), ("x2", ix[2]), ("r1", ix[3]), ("r2", ix[4])],
                    w,
                    &prog,
                    &y,
                )
            }))
        })?);

        // ⊢{x}y{x} ⟹ ⊢{x}y*{x}; premise-complete generator x = x₀·y*.
        let stars: Vec<PowerSeries<Q>> = self
            .pool
            .iter()
            .map(|f| self.star(f))
            .collect::<Result<_, _>>()?;
        reports.push(self.run_rule("hoare-star", 2, 5, |ix| {
            let ystar = &stars[ix[1]];
            let x = self.mult(&self.pool[ix[0]], ystar);
            debug_assert!(self.leq(&self.mult(&x, &self.pool[ix[1]]), &x));
            Ok((!self.conclude(&x, ystar, &x))
                .then(|| self.triple_witness(&[("x0", ix[0]), ("y", ix[1])], &x, ystar, &x)))
        })?);

        Ok(reports)
    }

    /// The strengthened choice and star rules with guards w₁, w₂, plus
    /// the star-induction step of the strengthened star proof.
    pub fn check_strengthened_rules(&self) -> Result<Vec<LawReport>, AlgebraError> {
        let n = self.pool.len();
        let mut reports = Vec::new();

        // ⊢{x·w₁}y₁{z}, ⊢{x·w₂}y₂{z} ⟹ ⊢{x}w₁·y₁+w₂·y₂{z}
        reports.push(self.run_rule("hoare-strengthened-choice", 6, 6, |ix| {
            let (x, w1, w2, y1, y2, r) = (
                &self.pool[ix[0]],
                &self.pool[ix[1]],
                &self.pool[ix[2]],
                &self.pool[ix[3]],
                &self.pool[ix[4]],
                &self.pool[ix[5]],
            );
            let b1 = self.mult(&self.mult(x, w1), y1);
            let b2 = self.mult(&self.mult(x, w2), y2);
            let z = self.sum2(&self.sum2(&b1, &b2), r);
            let prog = self.sum2(&self.mult(w1, y1), &self.mult(w2, y2));
            Ok((!self.conclude(x, &prog, &z)).then(|| {
                self.triple_witness(
                    &[("x", ix[0]), ("w1", ix[1]), ("w2", ix[2]), ("y1", ix[3]), ("y2", ix[4]), ("r", ix[5])],
                    x,
                    &prog,
                    &z,
                )
            }))
        })?);

        // ⊢{x·w₁}y{x} ⟹ ⊢{x}(w₁·y)*·w₂{x·w₂}; generator x = x₀·(w₁·y)*.
        let mut ustars = Vec::with_capacity(n * n);
        for w1 in &self.pool {
            for y in &self.pool {
                ustars.push(self.star(&self.mult(w1, y))?);
            }
        }
        reports.push(self.run_rule("hoare-strengthened-star", 4, 7, |ix| {
            let ustar = &ustars[ix[1] * n + ix[2]];
            let w2 = &self.pool[ix[3]];
            let x = self.mult(&self.pool[ix[0]], ustar);
            debug_assert!({
                let xw1y = self.mult(&self.mult(&x, &self.pool[ix[1]]), &self.pool[ix[2]]);
                self.leq(&xw1y, &x)
            });
            let prog = self.mult(ustar, w2);
            let post = self.mult(&x, w2);
            Ok((!self.conclude(&x, &prog, &post)).then(|| {
                self.triple_witness(
                    &[("x0", ix[0]), ("w1", ix[1]), ("y", ix[2]), ("w2", ix[3])],
                    &x,
                    &prog,
                    &post,
                )
            }))
        })?);

        // The induction step of the proof: x·w₁·y ≤ x ⟹ x·(w₁·y)* ≤ x.
        reports.push(self.run_rule("hoare-strengthened-star-step", 3, 8, |ix| {
            let ustar = &ustars[ix[1] * n + ix[2]];
            let x = self.mult(&self.pool[ix[0]], ustar);
            let lhs = self.mult(&x, ustar);
            Ok((!self.leq(&lhs, &x)).then(|| {
                vec![
                    format!("x0={}", self.names[ix[0]]),
                    format!("w1={}", self.names[ix[1]]),
                    format!("y={}", self.names[ix[2]]),
                    format!("x·(w1·y)*={}", fmt_series(self.carrier, self.target, &lhs)),
                    format!("x={}", fmt_series(self.carrier, self.target, &x)),
                ]
            }))
        })?);

        Ok(reports)
    }

    /// The meet-based concurrency rule and its interchange proof step.
    pub fn check_concurrency_rule(&self) -> Result<Vec<LawReport>, AlgebraError> {
        let mut reports = Vec::new();

        // ⊢{x₁}y₁{z₁}, ⊢{x₂}y₂{z₂} ⟹ ⊢{x₁⊓x₂}y₁⊓y₂{z₁⊓z₂}
        reports.push(self.run_rule("hoare-concurrency", 6, 9, |ix| {
            let (x1, y1, r1, x2, y2, r2) = (
                &self.pool[ix[0]],
                &self.pool[ix[1]],
                &self.pool[ix[2]],
                &self.pool[ix[3]],
                &self.pool[ix[4]],
                &self.pool[ix[5]],
            );
            let z1 = self.sum2(&self.mult(x1, y1), r1);
            let z2 = self.sum2(&self.mult(x2, y2), r2);
            let pre = self.meet2(x1, x2);
            let prog = self.meet2(y1, y2);
            let post = self.meet2(&z1, &z2);
            Ok((!self.conclude(&pre, &prog, &post)).then(|| {
                self.triple_witness(
                    &[("x1", ix[0]), ("y1", ix[1]), ("r1", ix[2]), ("x2", ix[3]), ("y2", ix[4]), ("r2", ix[5])],
                    &pre,
                    &prog,
                    &post,
                )
            }))
        })?);

        // (x₁⊓x₂)·(y₁⊓y₂) ≤ (x₁·y₁)⊓(x₂·y₂)
        reports.push(self.run_rule("hoare-concurrency-interchange-step", 4, 10, |ix| {
            let (x1, y1, x2, y2) = (
                &self.pool[ix[0]],
                &self.pool[ix[1]],
                &self.pool[ix[2]],
                &self.pool[ix[3]],
            );
            let lhs = self.mult(&self.meet2(x1, x2), &self.meet2(y1, y2));
            let rhs = self.meet2(&self.mult(x1, y1), &self.mult(x2, y2));
            Ok((!self.leq(&lhs, &rhs)).then(|| {
                vec![
                    format!("x1={}", self.names[ix[0]]),
                    format!("y1={}", self.names[ix[1]]),
                    format!("x2={}", self.names[ix[2]]),
                    format!("y2={}", self.names[ix[3]]),
                    format!("lhs={}", fmt_series(self.carrier, self.target, &lhs)),
                    format!("rhs={}", fmt_series(self.carrier, self.target, &rhs)),
                ]
            }))
        })?);

        Ok(reports)
    }

    /// Star unfold equalities (both sides) and induction implications
    /// (both sides, with the premise-complete generator y = x*·(z+r) or
    /// its mirror).
    pub fn check_star_laws(&self) -> Result<Vec<LawReport>, AlgebraError> {
        let stars: Vec<PowerSeries<Q>> = self
            .pool
            .iter()
            .map(|f| self.star(f))
            .collect::<Result<_, _>>()?;
        let mut reports = Vec::new();

        for (law, salt, left) in [("star-unfold-left", 11u64, true), ("star-unfold-right", 12, false)] {
            reports.push(self.run_rule(law, 1, salt, |ix| {
                let y = &self.pool[ix[0]];
                let ystar = &stars[ix[0]];
                let prod = if left {
                    self.mult(y, ystar)
                } else {
                    self.mult(ystar, y)
                };
                let lhs = self.sum2(&self.one, &prod);
                Ok((lhs != *ystar).then(|| {
                    vec![
                        format!("y={}", self.names[ix[0]]),
                        format!("1+{}={}", if left { "y·y*" } else { "y*·y" }, fmt_series(self.carrier, self.target, &lhs)),
                        format!("y*={}", fmt_series(self.carrier, self.target, ystar)),
                    ]
                }))
            })?);
        }

        for (law, salt, left) in [("star-induction-left", 13u64, true), ("star-induction-right", 14, false)] {
            reports.push(self.run_rule(law, 3, salt, |ix| {
                let xstar = &stars[ix[0]];
                let (z, r) = (&self.pool[ix[1]], &self.pool[ix[2]]);
                let zr = self.sum2(z, r);
                let (y, lhs) = if left {
                    let y = self.mult(xstar, &zr);
                    let lhs = self.mult(xstar, z);
                    debug_assert!(self.leq(&self.sum2(z, &self.mult(&self.pool[ix[0]], &y)), &y));
                    (y, lhs)
                } else {
                    let y = self.mult(&zr, xstar);
                    let lhs = self.mult(z, xstar);
                    debug_assert!(self.leq(&self.sum2(z, &self.mult(&y, &self.pool[ix[0]])), &y));
                    (y, lhs)
                };
                Ok((!self.leq(&lhs, &y)).then(|| {
                    vec![
                        format!("x={}", self.names[ix[0]]),
                        format!("z={}", self.names[ix[1]]),
                        format!("r={}", self.names[ix[2]]),
                        format!("lhs={}", fmt_series(self.carrier, self.target, &lhs)),
                        format!("y={}", fmt_series(self.carrier, self.target, &y)),
                    ]
                }))
            })?);
        }

        Ok(reports)
    }
}
