//! The end-to-end verification suite, shared by the `selftest` command and
//! the acceptance tests.

use std::collections::HashMap;
use std::fmt;
use std::time::{Duration, Instant};

use serde::Serialize;

use crate::algebra::realization_check;
use crate::error::Result;
use crate::flavor::Flavor;
use crate::forest::{enumerate_forests, factorize_left_comb, is_left_comb_factor, Decoration, Forest};
use crate::homology::{
    catalan, check_coderivation, check_d_squared, check_filtration, h0_two_routes, hochschild_generator_count,
    hochschild_subcomplex, homology, SignFlip, Subcomplex, TermGroup,
};
use crate::linalg::Backend;
use crate::operad::{
    dual_annihilator_check, ideal_slice_direct, ideal_slices, pairing, quotient_dims, Presentation, PresentationKind,
};
use crate::series::poincare_check;

/// How far each criterion is pushed.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub struct Scale {
    /// Weights for `d²`, homology and the two-route `H_0`.
    pub max_weight: usize,
    pub max_arity: usize,
    pub poincare_order: usize,
    pub hochschild_weight: usize,
    /// Largest weight for the factorization round trip with one and with two
    /// decorations.
    pub factorization_weights: (usize, usize),
    pub uniqueness_weight: usize,
    pub coderivation_length: usize,
}

impl Scale {
    pub fn full() -> Self {
        Scale {
            max_weight: 6,
            max_arity: 6,
            poincare_order: 7,
            hochschild_weight: 5,
            factorization_weights: (7, 5),
            uniqueness_weight: 5,
            coderivation_length: 4,
        }
    }

    /// Every bound capped at `w`.
    pub fn capped(w: usize) -> Self {
        let s = Self::full();
        Scale {
            max_weight: s.max_weight.min(w),
            max_arity: s.max_arity.min(w),
            poincare_order: s.poincare_order.min(w),
            hochschild_weight: s.hochschild_weight.min(w),
            factorization_weights: (s.factorization_weights.0.min(w), s.factorization_weights.1.min(w)),
            uniqueness_weight: s.uniqueness_weight.min(w),
            coderivation_length: s.coderivation_length.min(w),
        }
    }
}

impl Default for Scale {
    fn default() -> Self {
        Self::full()
    }
}

/// One verified statement inside a criterion.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct Check {
    pub name: String,
    pub pass: bool,
    pub detail: String,
    /// The statement is known to be false for these operads; its failure is
    /// reported but does not count against the run.
    pub cannot_hold: bool,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum Status {
    Pass,
    /// Only checks marked `cannot_hold` failed.
    Unattainable,
    Fail,
}

#[derive(Debug, Clone, Serialize)]
pub struct CriterionResult {
    pub id: u8,
    pub title: &'static str,
    pub status: Status,
    pub checks: Vec<Check>,
    #[serde(skip)]
    pub elapsed: Duration,
}

impl CriterionResult {
    pub fn pass(&self) -> bool {
        self.status == Status::Pass
    }

    pub fn failed_checks(&self) -> impl Iterator<Item = &Check> {
        self.checks.iter().filter(|c| !c.pass)
    }

    pub fn check(&self, name: &str) -> Option<&Check> {
        self.checks.iter().find(|c| c.name == name)
    }
}

/// `criterion  4 [PASS] d² = 0 (8 checks)`, followed by one indented line
/// per failed check.
impl fmt::Display for CriterionResult {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(
            f,
            "criterion {:>2} [{}] {} ({} checks)",
            self.id,
            if self.pass() { "PASS" } else { "FAIL" },
            self.title,
            self.checks.len(),
        )?;
        for c in self.failed_checks() {
            let tag = if c.cannot_hold { "failed, cannot hold" } else { "failed" };
            write!(f, "\n    {tag}: {}: {}", c.name, c.detail)?;
        }
        Ok(())
    }
}

pub const TITLES: [&str; 11] = [
    "operad dimensions are Catalan numbers",
    "dual operad dimensions are n",
    "relations and dual relations annihilate each other",
    "d² = 0",
    "homology is concentrated in degree 0 and weight 1",
    "H_0 from the complex equals the product quotient",
    "Hochschild subcomplexes",
    "left-comb factorization",
    "forest realization of the presented operads",
    "generating series composition",
    "mutation controls",
];

struct Checks(Vec<Check>);

impl Checks {
    fn new() -> Self {
        Checks(Vec::new())
    }

    fn add(&mut self, name: impl Into<String>, pass: bool, detail: impl Into<String>) {
        self.0.push(Check { name: name.into(), pass, detail: detail.into(), cannot_hold: false });
    }

    fn add_cannot_hold(&mut self, name: impl Into<String>, pass: bool, detail: impl Into<String>) {
        self.0.push(Check { name: name.into(), pass, detail: detail.into(), cannot_hold: true });
    }

    fn eq<T: PartialEq + fmt::Debug>(&mut self, name: impl Into<String>, got: T, want: T) {
        let pass = got == want;
        let detail = if pass { format!("{got:?}") } else { format!("got {got:?}, want {want:?}") };
        self.add(name, pass, detail);
    }
}

fn factorial(n: u128) -> u128 {
    (1..=n).product()
}

pub fn run_criterion(id: u8, scale: &Scale, flip: Option<SignFlip>) -> Result<CriterionResult> {
    let start = Instant::now();
    let mut c = Checks::new();
    match id {
        1 => operad_dims(&mut c, scale)?,
        2 => dual_dims(&mut c, scale)?,
        3 => duality(&mut c)?,
        4 => d_squared(&mut c, scale, flip)?,
        5 => homology_vanishing(&mut c, scale)?,
        6 => two_route_h0(&mut c, scale)?,
        7 => hochschild(&mut c, scale)?,
        8 => factorization(&mut c, scale),
        9 => realization(&mut c, scale)?,
        10 => poincare(&mut c, scale)?,
        11 => mutations(&mut c, scale)?,
        _ => panic!("no criterion {id}"),
    }
    let checks = c.0;
    let status = if checks.iter().all(|c| c.pass) {
        Status::Pass
    } else if checks.iter().all(|c| c.pass || c.cannot_hold) {
        Status::Unattainable
    } else {
        Status::Fail
    };
    Ok(CriterionResult { id, title: TITLES[id as usize - 1], status, checks, elapsed: start.elapsed() })
}

pub fn run_all(scale: &Scale, flip: Option<SignFlip>) -> Result<Vec<CriterionResult>> {
    (1..=11).map(|id| run_criterion(id, scale, flip)).collect()
}

fn operad_dims(c: &mut Checks, scale: &Scale) -> Result<()> {
    let n = scale.max_arity;
    let cat: Vec<u64> = (1..=n).map(|k| catalan(k) as u64).collect();
    let sigma: Vec<u64> = (1..=n as u128).map(|k| (factorial(2 * k) / factorial(k + 1)) as u64).collect();
    for kind in [PresentationKind::Searrow, PresentationKind::Nearrow] {
        let p = Presentation::new(kind);
        let t = quotient_dims(&p, n)?;
        c.eq(format!("{kind} non-Σ dims"), t.nonsigma, cat.clone());
        c.eq(format!("{kind} Σ dims"), t.sigma.clone(), sigma.clone());
        if n >= 3 {
            c.eq(format!("{kind} Σ dims in arities 2 and 3"), (t.sigma[1], t.sigma[2]), (4, 30));
        }
        let slices = ideal_slices(&p, n)?;
        for s in slices.iter().skip(2) {
            let direct = ideal_slice_direct(&p, s.arity())?;
            c.eq(format!("{kind} ideal in arity {} by direct substitution", s.arity()), direct.dim(), s.dim());
            c.add(format!("{kind} ideal in arity {} is closed", s.arity()), s.is_closed(&p)?, "");
        }
    }
    Ok(())
}

fn dual_dims(c: &mut Checks, scale: &Scale) -> Result<()> {
    let n = scale.max_arity;
    let lin: Vec<u64> = (1..=n as u64).collect();
    let sigma: Vec<u64> = (1..=n as u128).map(|k| (k * factorial(k)) as u64).collect();
    for kind in [PresentationKind::SearrowDual, PresentationKind::NearrowDual] {
        let t = quotient_dims(&Presentation::new(kind), n)?;
        c.eq(format!("{kind} non-Σ dims"), t.nonsigma, lin.clone());
        c.eq(format!("{kind} Σ dims"), t.sigma.clone(), sigma.clone());
        if n >= 3 {
            c.eq(format!("{kind} Σ dim in arity 3"), t.sigma[2], 18);
        }
    }
    Ok(())
}

fn duality(c: &mut Checks) -> Result<()> {
    for flavor in Flavor::ALL {
        let p = Presentation::new(PresentationKind::primal(flavor));
        let q = Presentation::new(PresentationKind::dual(flavor));
        let r = dual_annihilator_check(&p, &q)?;
        c.eq(format!("{flavor} dimensions (R, R^⊥, free)"), (r.dim_relations, r.dim_annihilator, r.free_dim), (3, 5, 8));
        let zeros = r.pairings.iter().filter(|e| e.value == "0").count();
        c.eq(format!("{flavor} vanishing cross pairings"), (zeros, r.pairings.len()), (15, 15));
        c.eq(
            format!("{flavor} Σ report (free, R, R^⊥)"),
            (r.sigma.free, r.sigma.relations, r.sigma.annihilator),
            (48, 18, 30),
        );
        c.eq(format!("{flavor} pairing rank"), r.pairing_rank, 8);
        c.add(format!("{flavor} annihilator check"), r.pass, r.failures.join("; "));
    }
    Ok(())
}

fn d_squared(c: &mut Checks, scale: &Scale, flip: Option<SignFlip>) -> Result<()> {
    for flavor in Flavor::ALL {
        for d in [1, 2] {
            let r = check_d_squared(flavor, scale.max_weight, d, flip)?;
            let detail = match &r.first_failure {
                Some(f) => f.clone(),
                None => format!("{} composites vanish", r.products_checked),
            };
            c.add(format!("{flavor} D={d} weights ≤ {}", scale.max_weight), r.pass, detail);
        }
        c.add(
            format!("{flavor} d respects the mark filtration"),
            check_filtration(flavor, scale.max_weight, 2)?,
            "",
        );
        let r = check_coderivation(flavor, scale.coderivation_length, 2);
        c.add(
            format!("{flavor} coderivation identities, lengths ≤ {}", scale.coderivation_length),
            r.pass,
            r.failure.unwrap_or_default(),
        );
    }
    Ok(())
}

fn homology_vanishing(c: &mut Checks, scale: &Scale) -> Result<()> {
    for flavor in Flavor::ALL {
        for d in [1, 2] {
            let r = homology(flavor, d, scale.max_weight, Backend::Rational)?;
            c.eq(format!("{flavor} D={d} total H_0"), r.h0_total, d);
            c.eq(format!("{flavor} D={d} H_0 at weight 1"), r.h(1, 0), d);
            c.eq(format!("{flavor} D={d} nonzero groups"), r.nonzero(), vec![(1, 0, d)]);
            c.eq(format!("{flavor} D={d} max higher H"), r.max_higher_h, 0);
        }
        let p = homology(flavor, 1, scale.max_weight, Backend::ModP)?;
        let q = homology(flavor, 1, scale.max_weight, Backend::Rational)?;
        c.add(format!("{flavor} D=1 agrees mod 2^61-1"), p == q, "");
    }
    Ok(())
}

fn two_route_h0(c: &mut Checks, scale: &Scale) -> Result<()> {
    for flavor in Flavor::ALL {
        for d in [1, 2] {
            for row in h0_two_routes(flavor, d, scale.max_weight)? {
                c.eq(format!("{flavor} D={d} weight {}", row.w), row.complex, row.quotient);
            }
        }
    }
    Ok(())
}

fn hochschild(c: &mut Checks, scale: &Scale) -> Result<()> {
    let w = scale.hochschild_weight;
    let cases = [
        (Flavor::Searrow, Subcomplex::M),
        (Flavor::Nearrow, Subcomplex::M),
        (Flavor::Nearrow, Subcomplex::Arrow),
    ];
    for (flavor, which) in cases {
        for d in [1, 2] {
            let r = hochschild_subcomplex(flavor, which, d, w, Backend::Rational)?;
            let higher: Vec<_> = r.nonzero().into_iter().filter(|&(_, n, _)| n != 0).collect();
            let name = format!("{flavor} {} D={d}", which.name());
            c.eq(format!("{name} concentrated in word length 1"), higher, vec![]);
            let got: Vec<usize> = (1..=w).map(|k| r.h(k, 0)).collect();
            let census: Vec<usize> = (1..=w).map(|k| hochschild_generator_count(which, k, d)).collect();
            c.eq(format!("{name} generator counts"), got, census);
        }
    }
    let arrow: Vec<usize> = (1..=w).map(|k| hochschild_generator_count(Subcomplex::Arrow, k, 1)).collect();
    let want: Vec<usize> = [1, 1, 2, 5, 14].into_iter().take(w).collect();
    c.eq("left-comb generators with one decoration", arrow, want);
    Ok(())
}

fn factorization(c: &mut Checks, scale: &Scale) {
    let (w1, w2) = scale.factorization_weights;
    for (d, max) in [(1, w1), (2, w2)] {
        let decorations = Decoration::numbered(d);
        let mut bad = Vec::new();
        let mut total = 0;
        for w in 1..=max {
            for f in enumerate_forests(w, &decorations) {
                total += 1;
                let fac = factorize_left_comb(&f);
                if fac.refold() != f || !fac.factors().iter().all(is_left_comb_factor) {
                    bad.push(f.to_string());
                }
            }
        }
        c.add(
            format!("D={d} weights ≤ {max} refold"),
            bad.is_empty(),
            if bad.is_empty() { format!("{total} forests") } else { bad.join(", ") },
        );
    }
    for d in [1, 2] {
        let (count, bad) = factorization_counts(scale.uniqueness_weight, d);
        c.add(
            format!("D={d} weights ≤ {} unique factorization", scale.uniqueness_weight),
            bad.is_empty(),
            if bad.is_empty() { format!("{count} forests") } else { bad.join(", ") },
        );
    }
}

/// Counts, for each forest up to weight `max`, every sequence of left-comb
/// factors whose `↗`-fold gives it, by brute force over all pairs
/// `A ↗ R` with `A` a factor. Returns the number of forests and those not
/// reached exactly once.
fn factorization_counts(max: usize, d: usize) -> (usize, Vec<String>) {
    let decorations = Decoration::numbered(d);
    let by_weight: Vec<Vec<Forest>> = (0..=max).map(|w| enumerate_forests(w, &decorations)).collect();
    let mut ways: HashMap<Forest, usize> = HashMap::new();
    for w in 1..=max {
        for f in &by_weight[w] {
            if is_left_comb_factor(f) {
                *ways.entry(f.clone()).or_default() += 1;
            }
        }
        for a_w in 1..w {
            for a in by_weight[a_w].iter().filter(|a| is_left_comb_factor(a)) {
                for r in &by_weight[w - a_w] {
                    let n = ways.get(r).copied().unwrap_or(0);
                    if n > 0 {
                        *ways.entry(a.graft_left_leaf(r)).or_default() += n;
                    }
                }
            }
        }
    }
    let mut bad = Vec::new();
    let mut count = 0;
    for f in by_weight.iter().flatten() {
        count += 1;
        let n = ways.get(f).copied().unwrap_or(0);
        if n != 1 {
            bad.push(format!("{f} ({n} factorizations)"));
        }
    }
    (count, bad)
}

fn realization(c: &mut Checks, scale: &Scale) -> Result<()> {
    for kind in [PresentationKind::Searrow, PresentationKind::Nearrow] {
        let p = Presentation::new(kind);
        for n in 1..=scale.max_arity {
            let r = realization_check(&p, n)?;
            c.eq(format!("{kind} arity {n} image dimension"), r.image_dim as u128, catalan(n));
            c.add(
                format!("{kind} arity {n} kernel is the ideal"),
                r.pass,
                format!("free {}, image {}, ideal {}, ideal vanishes: {}", r.free_dim, r.image_dim, r.ideal_dim, r.ideal_vanishes),
            );
        }
    }
    Ok(())
}

fn poincare(c: &mut Checks, scale: &Scale) -> Result<()> {
    let order = scale.poincare_order;
    for flavor in Flavor::ALL {
        let f = quotient_dims(&Presentation::new(PresentationKind::primal(flavor)), order)?;
        let g = quotient_dims(&Presentation::new(PresentationKind::dual(flavor)), order)?;
        let r = poincare_check(&f.nonsigma, &g.nonsigma, order)?;
        c.add(format!("{flavor} g(-f(-t)) = t through degree {order}"), r.pass, r.residual.join(" "));
    }
    Ok(())
}

fn mutations(c: &mut Checks, scale: &Scale) -> Result<()> {
    let w = scale.max_weight.max(3);
    for flavor in Flavor::ALL {
        for &g in TermGroup::for_flavor(flavor) {
            let r = check_d_squared(flavor, w, 1, Some(SignFlip::Group(g)))?;
            let name = format!("{flavor} flip of group {} breaks d²", g.name());
            match flavor {
                Flavor::Searrow => c.add(name, !r.pass, r.first_failure.unwrap_or_default()),
                // Reversing every barred (or every plain) merge equals
                // conjugating d by (-1)^bars (or (-1)^plain separators).
                Flavor::Nearrow => c.add_cannot_hold(
                    name,
                    !r.pass,
                    r.first_failure.unwrap_or_else(|| "d² still vanishes: the flip is a change of basis by signs".into()),
                ),
            }
        }
        for i in 1..w {
            let r = check_d_squared(flavor, w, 1, Some(SignFlip::Position(i)))?;
            c.add(
                format!("{flavor} flip at merge position {i} breaks d²"),
                !r.pass,
                r.first_failure.unwrap_or_default(),
            );
        }
        let p = Presentation::new(PresentationKind::primal(flavor));
        let rels = p.relations();
        let mut nonzero = 0;
        let mut total = 0;
        for a in rels {
            for b in rels {
                total += 1;
                if !pairing(a, b)?.is_zero() {
                    nonzero += 1;
                }
            }
        }
        c.add_cannot_hold(
            format!("{flavor} some self-pairing <R, R> is nonzero"),
            nonzero > 0,
            format!("{nonzero} of {total} self-pairings are nonzero; R lies inside its own annihilator"),
        );
        let r = dual_annihilator_check(&p, &p)?;
        c.add(
            format!("{flavor} R is rejected as its own annihilator"),
            !r.pass,
            r.failures.join("; "),
        );
    }
    Ok(())
}
