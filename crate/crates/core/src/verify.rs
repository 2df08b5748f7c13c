//! Verification suites, one per catalog entry.

use std::time::Instant;

use rayon::prelude::*;

use crate::catalog::{basis_words_for_slice, generators_for, Params, Regime, TheoremId};
use crate::decision::{
    central_space_of_slice, check_complement, consequences_in_slice, identity_space_of_slice, in_identities_plus_scalars,
    is_central_poly, is_identity, t_ideal_consequences_in_bound, t_space_consequences_in_bound, Check, ConsequenceStrategy,
    Dims, EvalMode, Slice, SpanBasis, Status, Universe, Verdict, VerificationReport,
};
use crate::error::{Error, Result};
use crate::field::Field;
use crate::freealg::{StarPolynomial, Variable};
use crate::ut2::InvolutionKind;

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct SuiteConfig {
    pub mode: EvalMode,
    /// Only consulted for theorems that hold for either involution.
    pub kind: Option<InvolutionKind>,
    pub max_degree: u32,
    /// Defaults to [`ConsequenceStrategy::default_for`] at `max_degree`.
    pub strategy: Option<ConsequenceStrategy>,
}

impl SuiteConfig {
    pub fn new(mode: EvalMode, max_degree: u32) -> SuiteConfig {
        SuiteConfig { mode, kind: None, max_degree, strategy: None }
    }

    fn strategy(&self) -> ConsequenceStrategy {
        self.strategy.unwrap_or_else(|| ConsequenceStrategy::default_for(self.mode, self.max_degree as usize))
    }
}

/// Fails unless `mode` belongs to the field regime `id` is stated for.
pub fn check_regime(id: TheoremId, mode: EvalMode) -> Result<()> {
    mode.validate()?;
    let ok = match id.regime() {
        Regime::Char0 => mode == EvalMode::GenericChar0,
        Regime::Infinite => mode.is_generic(),
        Regime::InfiniteCharP => matches!(mode, EvalMode::GenericCharP(_)),
        Regime::Finite => !mode.is_generic(),
        Regime::Any => true,
    };
    if ok {
        Ok(())
    } else {
        Err(Error::RegimeMismatch { theorem: id.to_string(), regime: mode.to_string() })
    }
}

fn involution(id: TheoremId, cfg: &SuiteConfig) -> Result<InvolutionKind> {
    match (id.involution(), cfg.kind) {
        (Some(k), Some(asked)) if k != asked => {
            Err(Error::RegimeMismatch { theorem: id.to_string(), regime: format!("involution {asked}") })
        }
        (Some(k), _) => Ok(k),
        (None, asked) => Ok(asked.unwrap_or(InvolutionKind::Star)),
    }
}

fn verdict_check(name: String, v: Verdict, expect_holds: bool) -> Check {
    match (v, expect_holds) {
        (Verdict::Holds, true) => Check::pass(name),
        (Verdict::Holds, false) => Check::fail(name, "holds, but was expected to fail"),
        (Verdict::Fails(w), false) => {
            let mut c = Check::pass(name);
            c.witness = Some(w.to_string());
            c
        }
        (Verdict::Fails(w), true) => Check::fail(name, w.to_string()),
    }
}

fn first_outside(span: &SpanBasis, target: &SpanBasis) -> Result<Option<StarPolynomial>> {
    for f in span.row_polynomials() {
        if !target.contains(&f)? {
            return Ok(Some(f));
        }
    }
    Ok(None)
}

/// Compares a claimed subspace with the exact one in a slice: a claimed
/// element outside the exact space fails; a strict inclusion warns when the
/// claimed side came from bounded generation, and fails otherwise.
fn compare(name: String, claimed: &SpanBasis, exact: &SpanBasis, mut dims: Dims, generated: bool) -> Result<Check> {
    dims.claimed = Some(claimed.dim());
    if let Some(f) = first_outside(claimed, exact)? {
        return Ok(Check::fail(name, format!("{f} is claimed but not in the exact space")).with_dims(dims));
    }
    Ok(if claimed.dim() == exact.dim() {
        Check::pass(name).with_dims(dims)
    } else if generated {
        Check { name, status: Status::Warn, dims: Some(dims), witness: Some("strategy exhausted without a match".into()) }
    } else {
        Check::fail(name, "claimed space is strictly smaller").with_dims(dims)
    })
}

fn slices(cfg: &SuiteConfig) -> Vec<Slice> {
    Slice::all_up_to(cfg.max_degree)
}

fn identity_suite(gens: &[StarPolynomial], kind: InvolutionKind, cfg: &SuiteConfig) -> Result<Vec<Check>> {
    let mut checks = Vec::new();
    for g in gens {
        checks.push(verdict_check(format!("generator {g} is an identity"), is_identity(g, kind, cfg.mode)?, true));
    }
    let strategy = cfg.strategy();
    let per_slice: Vec<Check> = slices(cfg)
        .par_iter()
        .map(|sl| {
            let ids = identity_space_of_slice(sl, kind, cfg.mode)?;
            let cons = consequences_in_slice(&[], gens, sl, &strategy, cfg.mode, Some(ids.dim()))?;
            let dims = Dims { identity: Some(ids.dim()), ..Dims::slice(sl.dim()) };
            compare(format!("slice {sl}: generated identities"), &cons.span, &ids, dims, true)
        })
        .collect::<Result<_>>()?;
    checks.extend(per_slice);
    Ok(checks)
}

/// What the claimed central space is built from in each slice.
struct CentralClaim<'a> {
    /// Checked for centrality one by one.
    generators: &'a [StarPolynomial],
    tspace: &'a [StarPolynomial],
    /// Generators of the identities, or `None` for the exact identity space.
    tideal: Option<&'a [StarPolynomial]>,
    /// Add the symmetric polynomials of the slice exactly.
    symmetric: bool,
}

fn symmetric_part(sl: &Slice, field: Field) -> SpanBasis {
    let polys: Vec<StarPolynomial> = sl
        .words()
        .iter()
        .map(|w| {
            let m = StarPolynomial::word(field, w.clone());
            &m + &m.involute()
        })
        .collect();
    SpanBasis::from_polynomials(field, sl.words().to_vec(), &polys).expect("slice words")
}

fn central_suite(claim: CentralClaim<'_>, kind: InvolutionKind, cfg: &SuiteConfig) -> Result<Vec<Check>> {
    let mut checks = Vec::new();
    for g in claim.generators {
        checks.push(verdict_check(format!("generator {g} is central"), is_central_poly(g, kind, cfg.mode)?, true));
    }
    if let Some(ids) = claim.tideal {
        for g in ids {
            checks.push(verdict_check(format!("generator {g} is an identity"), is_identity(g, kind, cfg.mode)?, true));
        }
    }
    let field = cfg.mode.field();
    let witness = match kind {
        InvolutionKind::Star => StarPolynomial::parse("z1*z2", field)?,
        InvolutionKind::S => StarPolynomial::parse("y1", field)?,
    };
    checks.push(verdict_check(
        format!("{witness} is central but not an identity plus a scalar"),
        in_identities_plus_scalars(&witness, kind, cfg.mode)?,
        false,
    ));
    let strategy = cfg.strategy();
    let per_slice: Vec<Check> = slices(cfg)
        .par_iter()
        .map(|sl| {
            let central = central_space_of_slice(sl, kind, cfg.mode)?;
            let ids = match claim.tideal {
                Some(_) => None,
                None => Some(identity_space_of_slice(sl, kind, cfg.mode)?),
            };
            let generated = !claim.tspace.is_empty() || claim.tideal.is_some();
            let mut claimed = ids.clone().unwrap_or_else(|| SpanBasis::zero(field, sl.words().to_vec()));
            if generated {
                let tideal = claim.tideal.unwrap_or(&[]);
                let cons = consequences_in_slice(claim.tspace, tideal, sl, &strategy, cfg.mode, Some(central.dim()))?;
                claimed = claimed.sum(&cons.span)?;
            }
            if claim.symmetric {
                claimed = claimed.sum(&symmetric_part(sl, field))?;
            }
            let dims = Dims { identity: ids.as_ref().map(SpanBasis::dim), central: Some(central.dim()), ..Dims::slice(sl.dim()) };
            compare(format!("slice {sl}: central polynomials"), &claimed, &central, dims, generated)
        })
        .collect::<Result<_>>()?;
    checks.extend(per_slice);
    Ok(checks)
}

fn basis_suite(id: TheoremId, gens: &[StarPolynomial], params: &Params, cfg: &SuiteConfig) -> Result<Vec<Check>> {
    let kind = InvolutionKind::Star;
    let field = cfg.mode.field();
    let mut checks = Vec::new();
    for g in gens {
        checks.push(verdict_check(format!("generator {g} is an identity"), is_identity(g, kind, cfg.mode)?, true));
    }
    let per_slice: Vec<Check> = slices(cfg)
        .par_iter()
        .map(|sl| {
            let basis = basis_words_for_slice(id, sl.degree(), params, field)?;
            let c = check_complement(&basis, sl, kind, cfg.mode)?;
            let dims = Dims {
                identity: Some(c.identity_dim),
                basis: Some(c.basis_count),
                combined_rank: Some(c.combined_rank),
                ..Dims::slice(c.slice_dim)
            };
            let name = format!("slice {sl}: basis complements the identities");
            Ok(if c.is_complement() {
                Check::pass(name).with_dims(dims)
            } else {
                let why = match (c.independent(), c.spanning()) {
                    (false, false) => "basis is dependent modulo identities and does not span",
                    (false, true) => "basis is dependent modulo identities",
                    _ => "identities and basis do not span the slice",
                };
                Check::fail(name, why).with_dims(dims)
            })
        })
        .collect::<Result<_>>()?;
    checks.extend(per_slice);
    Ok(checks)
}

fn even_z_suite(cfg: &SuiteConfig) -> Result<Vec<Check>> {
    let field = cfg.mode.field();
    let mut checks = Vec::new();
    for m in 0..=5u32 {
        let f = StarPolynomial::word(field, crate::freealg::Word::new((1..=m).map(Variable::z).collect()));
        let even = m % 2 == 0;
        let name = if even { format!("{f} is central") } else { format!("{f} is not central") };
        checks.push(verdict_check(name, is_central_poly(&f, InvolutionKind::Star, cfg.mode)?, even));
    }
    Ok(checks)
}

/// Products `u g v` of rows of `span` with words, up to degree `bound`.
fn ideal_closure(span: &SpanBasis, universe: &Universe, bound: usize) -> Result<SpanBasis> {
    let field = span.field();
    let words = universe.words_up_to(bound);
    let mut polys = span.row_polynomials();
    let base = polys.clone();
    for g in &base {
        let d = g.degree().unwrap_or(0);
        for u in universe.words_up_to(bound - d) {
            for v in universe.words_up_to(bound - d - u.len()) {
                if u.is_empty() && v.is_empty() {
                    continue;
                }
                let left = StarPolynomial::word(field, u.clone());
                let right = StarPolynomial::word(field, v);
                polys.push(&(&left * g) * &right);
            }
        }
    }
    SpanBasis::from_polynomials(field, words, &polys)
}

fn wrap_suite(kind: InvolutionKind, cfg: &SuiteConfig) -> Result<Vec<Check>> {
    let field = cfg.mode.field();
    let id = match kind {
        InvolutionKind::Star => TheoremId::WrapIdentity,
        InvolutionKind::S => TheoremId::IdSInfinite,
    };
    let gens = generators_for(id, &Params::of_field(field), field)?;
    let bound = cfg.max_degree as usize;
    let universe = Universe::standard(2, 2);
    let strategy = cfg.strategy();
    let wrapped = t_ideal_consequences_in_bound(&gens, &universe, bound, &strategy, cfg.mode)?;
    let mut both = gens.clone();
    both.extend(gens.iter().map(StarPolynomial::involute));
    let space = t_space_consequences_in_bound(&both, &universe, bound, &strategy, cfg.mode)?;
    let closure = ideal_closure(&space, &universe, bound)?;
    let dims = Dims { claimed: Some(wrapped.dim()), ..Dims::slice(closure.words().len()) };
    let mut checks = Vec::new();
    let bad = wrapped.row_polynomials().into_par_iter().map(|f| Ok((is_identity(&f, kind, cfg.mode)?, f))).collect::<Result<Vec<_>>>()?;
    match bad.into_iter().find(|(v, _)| !v.holds()) {
        None => checks.push(Check::pass("wrapped consequences are identities")),
        Some((v, f)) => checks.push(Check::fail("wrapped consequences are identities", format!("{f}: {}", v.witness().expect("fails")))),
    }
    let name = "wrapped consequences lie in the ideal closure";
    checks.push(match first_outside(&wrapped, &closure)? {
        None => Check::pass(name).with_dims(dims.clone()),
        Some(f) => Check::fail(name, format!("{f}")).with_dims(dims.clone()),
    });
    let name = "ideal closure lies in the wrapped consequences";
    checks.push(match first_outside(&closure, &wrapped)? {
        None => Check::pass(name).with_dims(dims),
        Some(f) => Check { name: name.into(), status: Status::Warn, dims: Some(dims), witness: Some(format!("{f}")) },
    });
    Ok(checks)
}

/// Runs the checks of `id` in the regime of `cfg`.
pub fn verify_theorem(id: TheoremId, cfg: &SuiteConfig) -> Result<VerificationReport> {
    let start = Instant::now();
    check_regime(id, cfg.mode)?;
    cfg.strategy().validate(cfg.mode.field())?;
    let kind = involution(id, cfg)?;
    let field = cfg.mode.field();
    let params = Params::of_field(field);
    let gens = generators_for(id, &params, field)?;
    let checks = match id {
        TheoremId::IdStarInfinite | TheoremId::IdStarFinite | TheoremId::IdSInfinite | TheoremId::IdSFinite => {
            identity_suite(&gens, kind, cfg)?
        }
        TheoremId::CentralStarChar0 | TheoremId::CentralStarInfCharP => {
            central_suite(CentralClaim { generators: &gens, tspace: &gens, tideal: None, symmetric: false }, kind, cfg)?
        }
        TheoremId::CentralStarFinite => {
            let ids = generators_for(TheoremId::IdStarFinite, &params, field)?;
            central_suite(CentralClaim { generators: &gens, tspace: &gens, tideal: Some(&ids), symmetric: false }, kind, cfg)?
        }
        TheoremId::CentralS => central_suite(CentralClaim { generators: &gens, tspace: &[], tideal: None, symmetric: true }, kind, cfg)?,
        TheoremId::BasisStarInfinite | TheoremId::BasisStarFinite => basis_suite(id, &gens, &params, cfg)?,
        TheoremId::CommutationLemma | TheoremId::PowerPQLemma => gens
            .iter()
            .map(|g| Ok(verdict_check(format!("{g} is an identity"), is_identity(g, kind, cfg.mode)?, true)))
            .collect::<Result<_>>()?,
        TheoremId::EvenZLemma => even_z_suite(cfg)?,
        TheoremId::WrapIdentity => wrap_suite(kind, cfg)?,
    };
    Ok(VerificationReport {
        theorem: id.to_string(),
        field: field.to_string(),
        mode: cfg.mode.to_string(),
        checks,
        elapsed_ms: start.elapsed().as_millis() as u64,
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn regimes() {
        let f3 = EvalMode::FiniteExhaustive(Field::Prime(3));
        assert!(check_regime(TheoremId::IdStarFinite, f3).is_ok());
        assert!(check_regime(TheoremId::IdStarInfinite, f3).is_err());
        assert!(check_regime(TheoremId::CentralStarChar0, EvalMode::GenericCharP(3)).is_err());
        assert!(check_regime(TheoremId::CentralStarInfCharP, EvalMode::GenericCharP(3)).is_ok());
        assert!(check_regime(TheoremId::CentralS, EvalMode::GenericChar0).is_ok());
    }

    #[test]
    fn small_suites_pass() {
        let f3 = EvalMode::FiniteExhaustive(Field::Prime(3));
        for (id, mode) in [
            (TheoremId::EvenZLemma, f3),
            (TheoremId::PowerPQLemma, f3),
            (TheoremId::CentralS, f3),
            (TheoremId::IdStarInfinite, EvalMode::GenericChar0),
        ] {
            let r = verify_theorem(id, &SuiteConfig::new(mode, 3)).unwrap();
            assert!(r.passed(), "{id}: {}", r.to_json());
            assert_eq!(r.count(Status::Warn), 0, "{id}: {}", r.to_json());
        }
    }

    #[test]
    fn involution_conflict() {
        let mut cfg = SuiteConfig::new(EvalMode::GenericChar0, 2);
        cfg.kind = Some(InvolutionKind::Star);
        assert!(matches!(verify_theorem(TheoremId::CentralS, &cfg), Err(Error::RegimeMismatch { .. })));
    }
}
