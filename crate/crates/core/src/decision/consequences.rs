//! Bounded generation of T(*)-space and T(*)-ideal consequences.
//!
//! A consequence of `f` substitutes a symmetric polynomial for every
//! y-variable and a skew one for every z-variable. The substituted values are
//! drawn from a finite family fixed by a [`ConsequenceStrategy`]: sums of at
//! most `max_support` generators `m + m*` (resp. `m - m*`) with `m` a word of
//! length at most `max_subst_degree`.
//!
//! Every value splits as a constant plus a part without constant term.
//! Values are grouped by that constant and the degree of the rest; for each
//! combination of groups the generator is shifted by the constants once and
//! the combination is dropped when the shifted terms that survive already
//! exceed the degree bound.

use std::collections::{BTreeMap, HashMap, HashSet};
use std::fmt;
use std::str::FromStr;
use std::sync::atomic::{AtomicBool, AtomicU64, Ordering};

use rayon::prelude::*;

use crate::error::{Error, Result};
use crate::field::{Field, FieldElement};
use crate::freealg::{StarPolynomial, VarKind, Variable, Word};

use super::linalg::{Echelon, Exact, Scalars, SparseRow, SpanBasis, Tables};
use super::mode::EvalMode;
use super::slice::Slice;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum CoefficientSet {
    /// Every nonzero field element; finite fields only.
    All,
    /// `1` and `-1`.
    UnitPairs,
}

impl fmt::Display for CoefficientSet {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            CoefficientSet::All => write!(f, "all"),
            CoefficientSet::UnitPairs => write!(f, "unit-pairs"),
        }
    }
}

impl FromStr for CoefficientSet {
    type Err = Error;

    fn from_str(s: &str) -> Result<CoefficientSet> {
        match s {
            "all" => Ok(CoefficientSet::All),
            "unit-pairs" => Ok(CoefficientSet::UnitPairs),
            _ => Err(Error::InvalidStrategy(format!("unknown coefficient set {s:?}"))),
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub struct ConsequenceStrategy {
    pub max_subst_degree: usize,
    pub max_support: usize,
    pub coefficients: CoefficientSet,
}

impl ConsequenceStrategy {
    pub fn new(max_subst_degree: usize, max_support: usize, coefficients: CoefficientSet) -> ConsequenceStrategy {
        ConsequenceStrategy { max_subst_degree, max_support, coefficients }
    }

    /// `(2, 2, All)` for exhaustive modes. Generic modes use unit
    /// coefficients and substitutions up to degree `bound - 1`, since
    /// homogeneous components cannot be split off by scaling.
    pub fn default_for(mode: EvalMode, bound: usize) -> ConsequenceStrategy {
        match mode {
            EvalMode::FiniteExhaustive(_) => ConsequenceStrategy::new(2, 2, CoefficientSet::All),
            _ => ConsequenceStrategy::new(bound.saturating_sub(1).max(2), 2, CoefficientSet::UnitPairs),
        }
    }

    pub fn validate(&self, field: Field) -> Result<()> {
        if self.max_subst_degree == 0 || self.max_support == 0 {
            return Err(Error::InvalidStrategy("degrees and supports must be positive".into()));
        }
        if self.coefficients == CoefficientSet::All && !field.is_finite() {
            return Err(Error::InvalidStrategy(format!("coefficient set \"all\" needs a finite field, not {field}")));
        }
        Ok(())
    }
}

impl fmt::Display for ConsequenceStrategy {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "degree {}, support {}, {}", self.max_subst_degree, self.max_support, self.coefficients)
    }
}

/// The letters substituted values may use.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Universe {
    letters: Vec<Variable>,
}

impl Universe {
    pub fn new(letters: impl IntoIterator<Item = Variable>) -> Universe {
        let mut letters: Vec<Variable> = letters.into_iter().collect();
        letters.sort();
        letters.dedup();
        Universe { letters }
    }

    /// Variables occurring in `polys`.
    pub fn of(polys: &[StarPolynomial]) -> Universe {
        Universe::new(polys.iter().flat_map(|f| f.variables()))
    }

    /// `y1..yn` and `z1..zm`.
    pub fn standard(n: u32, m: u32) -> Universe {
        Universe::new((1..=n).map(Variable::y).chain((1..=m).map(Variable::z)))
    }

    pub fn letters(&self) -> &[Variable] {
        &self.letters
    }

    /// All words of length at most `max_len`, in term order.
    pub fn words_up_to(&self, max_len: usize) -> Vec<Word> {
        let mut out = vec![Word::unit()];
        let mut layer = vec![Word::unit()];
        for _ in 0..max_len {
            let mut next = Vec::with_capacity(layer.len() * self.letters.len());
            for w in &layer {
                for &a in &self.letters {
                    next.push(w.concat(&Word::letter(a)));
                }
            }
            out.extend(next.iter().cloned());
            layer = next;
        }
        out
    }
}

/// `f`, `f*`, and their products with fresh variables on both sides.
pub fn t_ideal_forms(gens: &[StarPolynomial]) -> Vec<StarPolynomial> {
    let mut out: Vec<StarPolynomial> = Vec::new();
    let mut seen = HashSet::new();
    let mut push = |g: StarPolynomial, out: &mut Vec<StarPolynomial>| {
        if !g.is_zero() && seen.insert(g.clone()) {
            out.push(g);
        }
    };
    for f in gens {
        for g in [f.clone(), f.involute()] {
            let field = g.field();
            let vars = g.variables();
            let n = vars.iter().filter(|v| v.kind == VarKind::Y).map(|v| v.index).max().unwrap_or(0);
            let m = vars.iter().filter(|v| v.kind == VarKind::Z).map(|v| v.index).max().unwrap_or(0);
            let y1 = StarPolynomial::var(field, Variable::y(n + 1));
            let y2 = StarPolynomial::var(field, Variable::y(n + 2));
            let z1 = StarPolynomial::var(field, Variable::z(m + 1));
            let z2 = StarPolynomial::var(field, Variable::z(m + 2));
            push(g.clone(), &mut out);
            push(&(&y1 * &g) * &y2, &mut out);
            push(&(&y1 * &g) * &z1, &mut out);
            push(&(&z1 * &g) * &y1, &mut out);
            push(&(&z1 * &g) * &z2, &mut out);
        }
    }
    out
}

/// Substituted values sharing a constant term and the degree of the rest.
struct Group {
    constant: FieldElement,
    degree: Option<usize>,
    rests: Vec<StarPolynomial>,
}

fn group_values(values: &[StarPolynomial]) -> Vec<Group> {
    let mut groups: Vec<Group> = Vec::new();
    let mut index: HashMap<(FieldElement, Option<usize>), usize> = HashMap::new();
    for v in values {
        let c = v.constant_term();
        let rest = v.checked_sub(&StarPolynomial::constant(c.clone())).expect("same field");
        let key = (c.clone(), rest.degree());
        let i = *index.entry(key).or_insert_with(|| {
            groups.push(Group { constant: c, degree: rest.degree(), rests: Vec::new() });
            groups.len() - 1
        });
        groups[i].rests.push(rest);
    }
    groups
}

fn monic(f: StarPolynomial) -> StarPolynomial {
    match f.terms().values().next() {
        Some(c) => f.scale(&c.inverse().expect("nonzero")).expect("same field"),
        None => f,
    }
}

fn coefficient_choices(field: Field, set: CoefficientSet) -> Vec<FieldElement> {
    match set {
        CoefficientSet::All => field.enumerate().expect("finite").into_iter().filter(|c| !c.is_zero()).collect(),
        CoefficientSet::UnitPairs => {
            let one = FieldElement::one(field);
            vec![one.clone(), one.negate()]
        }
    }
}

fn combinations(
    gens: &[StarPolynomial],
    coeffs: &[FieldElement],
    support: usize,
    start: usize,
    acc: &StarPolynomial,
    out: &mut Vec<StarPolynomial>,
) {
    if support == 0 {
        return;
    }
    for i in start..gens.len() {
        for c in coeffs {
            let next = acc.checked_add(&gens[i].scale(c).expect("same field")).expect("same field");
            out.push(next.clone());
            combinations(gens, coeffs, support - 1, i + 1, &next, out);
        }
    }
}

/// Symmetric and skew generators `m + m*`, `m - m*` for words up to `len`,
/// made monic and deduplicated.
fn generators(field: Field, universe: &Universe, len: usize) -> (Vec<StarPolynomial>, Vec<StarPolynomial>) {
    let mut sym = Vec::new();
    let mut skew = Vec::new();
    let mut seen = HashSet::new();
    for w in universe.words_up_to(len) {
        let m = StarPolynomial::word(field, w);
        let star = m.involute();
        for (g, list) in [(&m + &star, &mut sym), (&m - &star, &mut skew)] {
            if g.is_zero() {
                continue;
            }
            let g = monic(g);
            if seen.insert(g.clone()) {
                list.push(g);
            }
        }
    }
    (sym, skew)
}

/// Grouped values for each variable kind. A variable of degree one only
/// needs single generators, by linearity, so those run up to length
/// `bound - 1`; other variables get bounded combinations.
struct ValueSets {
    linear: [Vec<Group>; 2],
    nonlinear: [Vec<Group>; 2],
}

impl ValueSets {
    fn new(field: Field, universe: &Universe, strategy: &ConsequenceStrategy, bound: usize) -> ValueSets {
        let zero = StarPolynomial::zero(field);
        let linear_len = strategy.max_subst_degree.max(bound.saturating_sub(1));
        let (lsym, lskew) = generators(field, universe, linear_len);
        let (sym, skew) = generators(field, universe, strategy.max_subst_degree);
        let coeffs = coefficient_choices(field, strategy.coefficients);
        let linear = |gens: &[StarPolynomial]| {
            let mut values = vec![zero.clone()];
            values.extend(gens.iter().cloned());
            group_values(&values)
        };
        let nonlinear = |gens: &[StarPolynomial]| {
            let mut all = vec![zero.clone()];
            combinations(gens, &coeffs, strategy.max_support, 0, &zero, &mut all);
            group_values(&all)
        };
        ValueSets { linear: [linear(&lsym), linear(&lskew)], nonlinear: [nonlinear(&sym), nonlinear(&skew)] }
    }

    fn groups(&self, v: Variable, linear: bool) -> &[Group] {
        let k = usize::from(v.is_skew());
        if linear {
            &self.linear[k]
        } else {
            &self.nonlinear[k]
        }
    }
}

/// One combination of value groups that survives the degree bound.
struct Profile<'a> {
    /// Shifted generator restricted to terms whose letters are all active.
    poly: StarPolynomial,
    active: Vec<(Variable, &'a [StarPolynomial])>,
    count: u64,
}

impl Profile<'_> {
    fn instance(&self, mut k: u64) -> StarPolynomial {
        let mut sigma = BTreeMap::new();
        for (v, rests) in self.active.iter().rev() {
            let n = rests.len() as u64;
            sigma.insert(*v, rests[(k % n) as usize].clone());
            k /= n;
        }
        self.poly.substitute_unchecked(&sigma)
    }
}

fn profiles<'a>(f: &StarPolynomial, sets: &'a ValueSets, max_total: usize, min_total: usize) -> Vec<Profile<'a>> {
    let field = f.field();
    let vars: Vec<Variable> = f.variables().into_iter().collect();
    let groups: Vec<&[Group]> = vars.iter().map(|&v| sets.groups(v, f.degree_in(v) <= 1)).collect();
    let mut shifted: HashMap<Vec<FieldElement>, StarPolynomial> = HashMap::new();
    let mut out = Vec::new();
    let mut pick = vec![0usize; vars.len()];
    'outer: loop {
        let chosen: Vec<&Group> = pick.iter().zip(&groups).map(|(&i, g)| &g[i]).collect();
        let consts: Vec<FieldElement> = chosen.iter().map(|g| g.constant.clone()).collect();
        let g = shifted.entry(consts).or_insert_with_key(|c| {
            let sigma = vars
                .iter()
                .zip(c)
                .filter(|(_, c)| !c.is_zero())
                .map(|(&v, c)| (v, &StarPolynomial::constant(c.clone()) + &StarPolynomial::var(field, v)))
                .collect();
            f.substitute_unchecked(&sigma)
        });
        let degree: HashMap<Variable, usize> =
            vars.iter().zip(&chosen).filter_map(|(&v, g)| g.degree.map(|d| (v, d))).collect();
        let mut poly = StarPolynomial::zero(field);
        let mut top = 0;
        for (w, c) in g.terms() {
            let Some(d) = w.letters().iter().map(|v| degree.get(v).copied()).sum::<Option<usize>>() else {
                continue;
            };
            top = top.max(d);
            poly.add_term(w.clone(), c);
        }
        if !poly.is_zero() && top <= max_total && top >= min_total {
            let active: Vec<(Variable, &[StarPolynomial])> = vars
                .iter()
                .zip(&chosen)
                .filter(|(_, g)| g.degree.is_some())
                .map(|(&v, g)| (v, g.rests.as_slice()))
                .collect();
            let count = active.iter().map(|(_, r)| r.len() as u64).product();
            out.push(Profile { poly, active, count });
        }
        for i in (0..vars.len()).rev() {
            pick[i] += 1;
            if pick[i] < groups[i].len() {
                continue 'outer;
            }
            pick[i] = 0;
        }
        break;
    }
    out
}

const CHUNK: u64 = 1024;
const BATCH: usize = 256;

/// Inserts the rows of every instance of every profile, in parallel batches.
/// Stops between batches once `done` holds; the flag returned says so.
fn collect<'s, S: Scalars>(
    s: &'s S,
    ncols: usize,
    profiles: &[Profile<'_>],
    to_rows: &(dyn Fn(&StarPolynomial) -> Vec<SparseRow<S::E>> + Sync),
    done: &(dyn Fn(&Echelon<'s, S>) -> bool + Sync),
) -> (Echelon<'s, S>, bool, u64) {
    let mut jobs = Vec::new();
    for (p, prof) in profiles.iter().enumerate() {
        let mut k = 0;
        while k < prof.count {
            jobs.push((p, k, (k + CHUNK).min(prof.count)));
            k += CHUNK;
        }
    }
    let mut acc = Echelon::new(s, ncols);
    let processed = AtomicU64::new(0);
    for batch in jobs.chunks(BATCH) {
        if done(&acc) || acc.is_full() {
            return (acc, true, processed.into_inner());
        }
        let full = AtomicBool::new(false);
        let part = batch
            .par_iter()
            .fold(
                || Echelon::new(s, ncols),
                |mut e, &(p, from, to)| {
                    if full.load(Ordering::Relaxed) {
                        return e;
                    }
                    for k in from..to {
                        for row in to_rows(&profiles[p].instance(k)) {
                            e.insert(row);
                        }
                    }
                    processed.fetch_add(to - from, Ordering::Relaxed);
                    if e.is_full() {
                        full.store(true, Ordering::Relaxed);
                    }
                    e
                },
            )
            .reduce(
                || Echelon::new(s, ncols),
                |mut a, b| {
                    a.merge(b);
                    a
                },
            );
        acc.merge(part);
    }
    (acc, false, processed.into_inner())
}

fn sparse<S: Scalars>(s: &S, f: &StarPolynomial, column: &HashMap<Word, usize>) -> SparseRow<S::E> {
    let mut row: SparseRow<S::E> = f
        .terms()
        .iter()
        .map(|(w, c)| (*column.get(w).expect("instance stays in the universe"), s.lift(c)))
        .collect();
    row.sort_by_key(|e| e.0);
    row
}

fn check_bound(gens: &[StarPolynomial], bound: usize) -> Result<()> {
    let needed = gens.iter().filter_map(StarPolynomial::degree).max().unwrap_or(0);
    if bound < needed {
        Err(Error::BoundTooSmall { bound, needed })
    } else {
        Ok(())
    }
}

fn check_inputs(gens: &[StarPolynomial], strategy: &ConsequenceStrategy, mode: EvalMode) -> Result<()> {
    for g in gens {
        mode.check_field(g.field())?;
    }
    strategy.validate(mode.field())
}

fn bounded<S: Scalars>(
    s: &S,
    gens: &[StarPolynomial],
    universe: &Universe,
    bound: usize,
    strategy: &ConsequenceStrategy,
    mode: EvalMode,
) -> SpanBasis {
    let field = mode.field();
    let words = universe.words_up_to(bound);
    let column: HashMap<Word, usize> = words.iter().cloned().enumerate().map(|(i, w)| (w, i)).collect();
    let sets = ValueSets::new(field, universe, strategy, bound);
    let profs: Vec<Profile<'_>> = gens.iter().flat_map(|g| profiles(g, &sets, bound, 0)).collect();
    let to_rows = |f: &StarPolynomial| -> Vec<SparseRow<S::E>> {
        if mode.is_generic() {
            f.multihomogeneous_components().iter().map(|(_, c)| sparse(s, c, &column)).collect()
        } else {
            vec![sparse(s, f, &column)]
        }
    };
    let (e, _, _) = collect(s, words.len(), &profs, &to_rows, &|_: &Echelon<'_, S>| false);
    SpanBasis::from_echelon(words, &e)
}

fn bounded_any(
    gens: &[StarPolynomial],
    universe: &Universe,
    bound: usize,
    strategy: &ConsequenceStrategy,
    mode: EvalMode,
) -> SpanBasis {
    let field = mode.field();
    match Tables::new(field) {
        Ok(t) => bounded(&t, gens, universe, bound, strategy, mode),
        Err(_) => bounded(&Exact::new(field), gens, universe, bound, strategy, mode),
    }
}

/// Span of the consequences of `w` of total degree at most `bound`, over
/// all words in `universe` of length at most `bound`. Generic modes add the
/// multihomogeneous components of each consequence.
pub fn t_space_consequences_in_bound(
    w: &[StarPolynomial],
    universe: &Universe,
    bound: usize,
    strategy: &ConsequenceStrategy,
    mode: EvalMode,
) -> Result<SpanBasis> {
    check_inputs(w, strategy, mode)?;
    check_bound(w, bound)?;
    Ok(bounded_any(w, universe, bound, strategy, mode))
}

/// Like [`t_space_consequences_in_bound`], applied to [`t_ideal_forms`].
pub fn t_ideal_consequences_in_bound(
    s: &[StarPolynomial],
    universe: &Universe,
    bound: usize,
    strategy: &ConsequenceStrategy,
    mode: EvalMode,
) -> Result<SpanBasis> {
    check_inputs(s, strategy, mode)?;
    check_bound(s, bound)?;
    Ok(bounded_any(&t_ideal_forms(s), universe, bound, strategy, mode))
}

/// Consequences restricted to one slice.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SliceConsequences {
    pub span: SpanBasis,
    /// The span is the full slice part of the strategy's consequences; false
    /// when generation stopped at the cap.
    pub exhausted: bool,
    pub instances: u64,
}

fn in_slice<S: Scalars>(
    s: &S,
    gens: &[StarPolynomial],
    slice: &Slice,
    strategy: &ConsequenceStrategy,
    mode: EvalMode,
    cap: Option<usize>,
) -> SliceConsequences {
    let field = mode.field();
    let universe = Universe::new(slice.degree().variables());
    let total_degree = slice.total();
    let sets = ValueSets::new(field, &universe, strategy, total_degree);
    let slice_words = slice.words().to_vec();
    let n = slice_words.len();
    let (columns, offset): (Vec<Word>, usize) = if mode.is_generic() {
        (slice_words.clone(), 0)
    } else {
        let mut outside: Vec<Word> =
            universe.words_up_to(total_degree).into_iter().filter(|w| w.multi_degree() != *slice.degree()).collect();
        let offset = outside.len();
        outside.extend(slice_words.iter().cloned());
        (outside, offset)
    };
    let column: HashMap<Word, usize> = columns.iter().cloned().enumerate().map(|(i, w)| (w, i)).collect();
    let min_total = if mode.is_generic() { total_degree } else { 0 };
    let profs: Vec<Profile<'_>> = gens.iter().flat_map(|g| profiles(g, &sets, total_degree, min_total)).collect();
    let degree = slice.degree().clone();
    let to_rows = |f: &StarPolynomial| -> Vec<SparseRow<S::E>> {
        if mode.is_generic() {
            let part = StarPolynomial::from_terms(
                field,
                f.terms().iter().filter(|(w, _)| w.multi_degree() == degree).map(|(w, c)| (w.clone(), c.clone())),
            )
            .expect("same field");
            if part.is_zero() {
                Vec::new()
            } else {
                vec![sparse(s, &part, &column)]
            }
        } else {
            vec![sparse(s, f, &column)]
        }
    };
    let slice_rank = |e: &Echelon<'_, S>| e.rows().filter(|(c, _)| *c >= offset).count();
    let done = |e: &Echelon<'_, S>| cap.is_some_and(|c| slice_rank(e) >= c) || slice_rank(e) == n;
    let (e, stopped, instances) = collect(s, columns.len(), &profs, &to_rows, &done);
    let exhausted = !stopped || slice_rank(&e) == n;
    let mut inside = Echelon::new(s, n);
    for (c, row) in e.rows() {
        if c >= offset {
            inside.insert(row.iter().map(|(j, x)| (j - offset, x.clone())).collect());
        }
    }
    SliceConsequences { span: SpanBasis::from_echelon(slice_words, &inside), exhausted, instances }
}

/// Consequences lying in `slice` of the T(*)-space generated by `tspace`
/// plus the T(*)-ideal generated by `tideal`. Only the slice's variables are
/// substituted in, which loses nothing because sending a variable to zero is
/// itself a substitution.
///
/// Exhaustive modes keep instances of degree at most the slice degree and
/// intersect their span with the slice; generic modes keep the slice
/// component of every instance. Generation stops early once the slice rank
/// reaches `cap`, when given.
pub fn consequences_in_slice(
    tspace: &[StarPolynomial],
    tideal: &[StarPolynomial],
    slice: &Slice,
    strategy: &ConsequenceStrategy,
    mode: EvalMode,
    cap: Option<usize>,
) -> Result<SliceConsequences> {
    check_inputs(tspace, strategy, mode)?;
    check_inputs(tideal, strategy, mode)?;
    let mut gens = tspace.to_vec();
    gens.extend(t_ideal_forms(tideal));
    let field = mode.field();
    Ok(match Tables::new(field) {
        Ok(t) => in_slice(&t, &gens, slice, strategy, mode, cap),
        Err(_) => in_slice(&Exact::new(field), &gens, slice, strategy, mode, cap),
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::freealg::MultiDegree;

    fn p(text: &str, field: Field) -> StarPolynomial {
        StarPolynomial::parse(text, field).unwrap()
    }

    #[test]
    fn universe_words() {
        let u = Universe::standard(1, 1);
        let w: Vec<String> = u.words_up_to(2).iter().map(|w| w.to_string()).collect();
        assert_eq!(w, ["1", "y1", "z1", "y1^2", "y1*z1", "z1*y1", "z1^2"]);
    }

    #[test]
    fn ideal_forms() {
        let q = Field::Rational;
        let forms = t_ideal_forms(&[p("[y1,y2]", q)]);
        assert!(forms.contains(&p("y3*[y1,y2]*y4", q)));
        assert!(forms.contains(&p("z1*[y1,y2]*z2", q)));
        assert!(forms.contains(&p("[y2,y1]", q)));
    }

    #[test]
    fn strategy_validation() {
        let s = ConsequenceStrategy::new(2, 2, CoefficientSet::All);
        assert!(s.validate(Field::Prime(3)).is_ok());
        assert!(matches!(s.validate(Field::Rational), Err(Error::InvalidStrategy(_))));
        assert!(ConsequenceStrategy::new(0, 2, CoefficientSet::UnitPairs).validate(Field::Rational).is_err());
        assert_eq!(ConsequenceStrategy::default_for(EvalMode::GenericChar0, 4).max_subst_degree, 3);
    }

    #[test]
    fn bound_too_small() {
        let f3 = Field::Prime(3);
        let s = ConsequenceStrategy::default_for(EvalMode::FiniteExhaustive(f3), 2);
        let r = t_space_consequences_in_bound(&[p("y1^3", f3)], &Universe::standard(1, 0), 2, &s, EvalMode::FiniteExhaustive(f3));
        assert!(matches!(r, Err(Error::BoundTooSmall { bound: 2, needed: 3 })));
    }

    #[test]
    fn renaming_instances() {
        let q = Field::Rational;
        let mode = EvalMode::GenericChar0;
        let s = ConsequenceStrategy::default_for(mode, 2);
        let span = t_space_consequences_in_bound(&[p("z1*z2", q)], &Universe::standard(0, 2), 2, &s, mode).unwrap();
        for f in ["z1*z2", "z1^2", "z2*z1"] {
            assert!(span.contains(&p(f, q)).unwrap(), "{f}");
        }
    }

    #[test]
    fn char_three_power_brings_constants() {
        let f3 = Field::Prime(3);
        let mode = EvalMode::FiniteExhaustive(f3);
        let s = ConsequenceStrategy::default_for(mode, 3);
        let span = t_space_consequences_in_bound(&[p("y1^3", f3)], &Universe::standard(1, 0), 3, &s, mode).unwrap();
        assert!(span.contains(&p("y1^3", f3)).unwrap());
        assert!(span.contains(&p("1", f3)).unwrap());
    }

    #[test]
    fn symmetric_polynomials_from_a_variable() {
        let f3 = Field::Prime(3);
        let mode = EvalMode::FiniteExhaustive(f3);
        let u = Universe::standard(2, 1);
        let span = t_space_consequences_in_bound(&[p("y1", f3)], &u, 2, &ConsequenceStrategy::default_for(mode, 2), mode)
            .unwrap();
        // Oracle: the symmetric polynomials of degree <= 2 are spanned by w + w*.
        let words = u.words_up_to(2);
        let sym: Vec<StarPolynomial> = words
            .iter()
            .map(|w| {
                let m = StarPolynomial::word(f3, w.clone());
                &m + &m.involute()
            })
            .collect();
        let oracle = SpanBasis::from_polynomials(f3, words, &sym).unwrap();
        assert_eq!(span, oracle);
    }

    #[test]
    fn ideal_wrapping_instances() {
        let q = Field::Rational;
        let mode = EvalMode::GenericChar0;
        let s = ConsequenceStrategy::default_for(mode, 3);
        let span = t_ideal_consequences_in_bound(&[p("[y1,y2]", q)], &Universe::standard(3, 0), 3, &s, mode).unwrap();
        for f in ["[y1,y2]", "y3*[y1,y2]", "[y1,y2]*y3"] {
            assert!(span.contains(&p(f, q)).unwrap(), "{f}");
        }
        let f3 = Field::Prime(3);
        let m3 = EvalMode::FiniteExhaustive(f3);
        let span = t_ideal_consequences_in_bound(&[p("z1", f3)], &Universe::standard(1, 2), 2, &ConsequenceStrategy::default_for(m3, 2), m3)
            .unwrap();
        for f in ["z1", "y1*z1", "z1*y1", "z1*z2", "z2*z1", "z1^2"] {
            assert!(span.contains(&p(f, f3)).unwrap(), "{f}");
        }
    }

    #[test]
    fn slice_consequences_of_commutator() {
        let f3 = Field::Prime(3);
        let mode = EvalMode::FiniteExhaustive(f3);
        let sl = Slice::new(MultiDegree::new(&[(1, 1), (2, 1)], &[]));
        let r = consequences_in_slice(&[], &[p("[y1,y2]", f3)], &sl, &ConsequenceStrategy::default_for(mode, 2), mode, None)
            .unwrap();
        assert_eq!(r.span.dim(), 1);
        assert!(r.span.contains(&p("y1*y2 - y2*y1", f3)).unwrap());
    }
}
