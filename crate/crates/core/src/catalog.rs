//! Generator sets, quotient bases and the exponent set `Lambda_n`.
//!
//! Generator sets are kept as text in the polynomial grammar, with `{q}`,
//! `{p}` style placeholders, and parsed over the requested field on demand.

use std::fmt;
use std::str::FromStr;

use serde::Serialize;

use crate::error::{Error, Result};
use crate::field::Field;
use crate::freealg::{MultiDegree, StarPolynomial, VarKind, Variable, Word};
use crate::ut2::InvolutionKind;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize)]
pub enum TheoremId {
    IdStarInfinite,
    IdStarFinite,
    IdSInfinite,
    IdSFinite,
    CentralStarChar0,
    CentralStarInfCharP,
    CentralStarFinite,
    CentralS,
    BasisStarInfinite,
    BasisStarFinite,
    CommutationLemma,
    EvenZLemma,
    PowerPQLemma,
    WrapIdentity,
}

/// Field regimes a theorem is stated for.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Regime {
    /// Characteristic zero.
    Char0,
    /// Infinite fields, either characteristic.
    Infinite,
    /// Infinite fields of odd prime characteristic.
    InfiniteCharP,
    Finite,
    Any,
}

impl TheoremId {
    pub const ALL: [TheoremId; 14] = [
        TheoremId::IdStarInfinite,
        TheoremId::IdStarFinite,
        TheoremId::IdSInfinite,
        TheoremId::IdSFinite,
        TheoremId::CentralStarChar0,
        TheoremId::CentralStarInfCharP,
        TheoremId::CentralStarFinite,
        TheoremId::CentralS,
        TheoremId::BasisStarInfinite,
        TheoremId::BasisStarFinite,
        TheoremId::CommutationLemma,
        TheoremId::EvenZLemma,
        TheoremId::PowerPQLemma,
        TheoremId::WrapIdentity,
    ];

    pub fn name(&self) -> &'static str {
        match self {
            TheoremId::IdStarInfinite => "IdStarInfinite",
            TheoremId::IdStarFinite => "IdStarFinite",
            TheoremId::IdSInfinite => "IdSInfinite",
            TheoremId::IdSFinite => "IdSFinite",
            TheoremId::CentralStarChar0 => "CentralStarChar0",
            TheoremId::CentralStarInfCharP => "CentralStarInfCharP",
            TheoremId::CentralStarFinite => "CentralStarFinite",
            TheoremId::CentralS => "CentralS",
            TheoremId::BasisStarInfinite => "BasisStarInfinite",
            TheoremId::BasisStarFinite => "BasisStarFinite",
            TheoremId::CommutationLemma => "CommutationLemma",
            TheoremId::EvenZLemma => "EvenZLemma",
            TheoremId::PowerPQLemma => "PowerPQLemma",
            TheoremId::WrapIdentity => "WrapIdentity",
        }
    }

    /// Short description used as the tag in catalog dumps.
    pub fn tag(&self) -> &'static str {
        match self {
            TheoremId::IdStarInfinite => "star identities, infinite field",
            TheoremId::IdStarFinite => "star identities, field with q elements",
            TheoremId::IdSInfinite => "s identities, infinite field",
            TheoremId::IdSFinite => "s identities, field with q elements",
            TheoremId::CentralStarChar0 => "star central polynomials, characteristic 0 (plus identities)",
            TheoremId::CentralStarInfCharP => "star central polynomials, infinite field of characteristic p (plus identities)",
            TheoremId::CentralStarFinite => "star central polynomials, field with q elements (plus identities)",
            TheoremId::CentralS => "s central polynomials (plus identities)",
            TheoremId::BasisStarInfinite => "star quotient basis, infinite field (modulo these identities)",
            TheoremId::BasisStarFinite => "star quotient basis, field with q elements (modulo these identities)",
            TheoremId::CommutationLemma => "skew variables commute in front of a commutator, up to sign",
            TheoremId::EvenZLemma => "products of an even number of skew variables are central",
            TheoremId::PowerPQLemma => "y1^(pq) - y1^p is a star identity",
            TheoremId::WrapIdentity => "ideal generated by S equals the space generated by its wrapped forms",
        }
    }

    pub fn regime(&self) -> Regime {
        match self {
            TheoremId::IdStarInfinite | TheoremId::IdSInfinite | TheoremId::BasisStarInfinite => Regime::Infinite,
            TheoremId::IdStarFinite
            | TheoremId::IdSFinite
            | TheoremId::CentralStarFinite
            | TheoremId::BasisStarFinite
            | TheoremId::PowerPQLemma => Regime::Finite,
            TheoremId::CentralStarChar0 => Regime::Char0,
            TheoremId::CentralStarInfCharP => Regime::InfiniteCharP,
            TheoremId::CentralS | TheoremId::CommutationLemma | TheoremId::EvenZLemma | TheoremId::WrapIdentity => {
                Regime::Any
            }
        }
    }

    /// The involution the statement is about; `None` when either works.
    pub fn involution(&self) -> Option<InvolutionKind> {
        match self {
            TheoremId::IdSInfinite | TheoremId::IdSFinite | TheoremId::CentralS => Some(InvolutionKind::S),
            TheoremId::WrapIdentity => None,
            _ => Some(InvolutionKind::Star),
        }
    }
}

impl fmt::Display for TheoremId {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for TheoremId {
    type Err = Error;

    fn from_str(s: &str) -> Result<TheoremId> {
        TheoremId::ALL
            .into_iter()
            .find(|id| id.name().eq_ignore_ascii_case(s))
            .ok_or_else(|| Error::UnknownTheorem(s.to_string()))
    }
}

/// Field size and characteristic for parameterized families.
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq)]
pub struct Params {
    pub q: Option<u64>,
    pub p: Option<u32>,
}

impl Params {
    pub fn new(q: Option<u64>, p: Option<u32>) -> Params {
        Params { q, p }
    }

    /// `q = |F|` for finite fields and `p = char F` when positive.
    pub fn of_field(field: Field) -> Params {
        let p = field.characteristic();
        Params { q: field.cardinality(), p: (p > 0).then_some(p) }
    }

    fn q(&self) -> Result<u64> {
        let q = self.q.ok_or(Error::MissingParameter("q"))?;
        if let Some(p) = self.p {
            if !is_power_of(q, p as u64) {
                return Err(Error::InconsistentPQ { p, q });
            }
        }
        Ok(q)
    }

    fn p(&self) -> Result<u32> {
        match (self.p, self.q) {
            (Some(p), Some(q)) if !is_power_of(q, p as u64) => Err(Error::InconsistentPQ { p, q }),
            (Some(p), _) => Ok(p),
            (None, Some(q)) => smallest_prime_factor(q).ok_or(Error::MissingParameter("p")),
            (None, None) => Err(Error::MissingParameter("p")),
        }
    }
}

fn is_power_of(q: u64, p: u64) -> bool {
    if p < 2 || q < p {
        return false;
    }
    let mut x = q;
    while x.is_multiple_of(p) {
        x /= p;
    }
    x == 1
}

fn smallest_prime_factor(q: u64) -> Option<u32> {
    (2..=q).find(|d| q.is_multiple_of(*d)).map(|d| d as u32)
}

const ID_STAR_INFINITE: [&str; 4] = ["[y1,y2]", "[z1,z2]", "[y1,z1]*[y2,z2]", "z1*y1*z2 - z2*y1*z1"];

const ID_STAR_FINITE_EXTRA: [&str; 5] = [
    "(y1^{q} - y1)*[z1,y2]",
    "(y1^{q} - y1)*(y2^{q} - y2)",
    "z1^{q} - z1",
    "(z1^{q-1} - 1)*[z1,y1]",
    "(y1^{q} - y1)*z1 - 1/2*[z1,y1]",
];

const ID_S_INFINITE: [&str; 4] = ["[y1,y2]", "[z1,y1]", "[z1,z2]*[z3,z4]", "z1*z2*z3 - z3*z2*z1"];

const ID_S_FINITE_EXTRA: [&str; 5] = [
    "y1^{q} - y1",
    "(z1^{q} - z1)*(z2^{q} - z2)",
    "z1^{q+1} - z1^2",
    "(z1^{q} - z1)*z2 + z2*(z1^{q} - z1)",
    "[z1,z2]*(z3^{q} - z3)",
];

const CENTRAL_STAR_FINITE: &str = "{l}*y1*(y2^{q+l-1} - y2^{l}) + y1^{q}*y2^{l}";

fn fill(template: &str, q: u64, p: u32, l: u64) -> String {
    template
        .replace("{q+l-1}", &(q + l - 1).to_string())
        .replace("{q+1}", &(q + 1).to_string())
        .replace("{q-1}", &(q - 1).to_string())
        .replace("{q}", &q.to_string())
        .replace("{p}", &p.to_string())
        .replace("{l}", &l.to_string())
}

/// `sigma(1..m+1)` products against the sorted product, then the sign rule
/// for moving the commutator left past `z_{i+1} .. z_m`.
fn commutation_texts() -> Vec<String> {
    let mut out = Vec::new();
    for m in 1..=3u32 {
        let zs = |idx: &[u32]| idx.iter().map(|i| format!("z{i}")).collect::<Vec<_>>().join("*");
        let sorted: Vec<u32> = (1..=m).collect();
        let base = format!("{}*[z{},y1]", zs(&sorted), m + 1);
        for sigma in permutations(m + 1) {
            if sigma.iter().copied().eq(1..=m + 1) {
                continue;
            }
            out.push(format!("{}*[z{},y1] - {base}", zs(&sigma[..m as usize]), sigma[m as usize]));
        }
        for i in 0..m {
            let sign = if (m - i) % 2 == 0 { "-" } else { "+" };
            let left = zs(&sorted[..i as usize]);
            let right = zs(&sorted[i as usize..]);
            let moved = if left.is_empty() {
                format!("[z{},y1]*{right}", m + 1)
            } else {
                format!("{left}*[z{},y1]*{right}", m + 1)
            };
            out.push(format!("{base} {sign} {moved}"));
        }
    }
    out
}

/// Permutations of `1..=n` in lexicographic order.
pub fn permutations(n: u32) -> Vec<Vec<u32>> {
    fn go(rest: &mut Vec<u32>, acc: &mut Vec<u32>, out: &mut Vec<Vec<u32>>) {
        if rest.is_empty() {
            out.push(acc.clone());
            return;
        }
        for i in 0..rest.len() {
            let x = rest.remove(i);
            acc.push(x);
            go(rest, acc, out);
            acc.pop();
            rest.insert(i, x);
        }
    }
    let mut out = Vec::new();
    go(&mut (1..=n).collect(), &mut Vec::new(), &mut out);
    out
}

/// The generator texts of `id`, before parsing.
pub fn generator_texts(id: TheoremId, params: &Params) -> Result<Vec<String>> {
    let own = |xs: &[&str]| xs.iter().map(|s| s.to_string()).collect::<Vec<String>>();
    Ok(match id {
        TheoremId::IdStarInfinite | TheoremId::BasisStarInfinite | TheoremId::WrapIdentity => own(&ID_STAR_INFINITE),
        TheoremId::IdSInfinite => own(&ID_S_INFINITE),
        TheoremId::IdStarFinite | TheoremId::BasisStarFinite => {
            let q = params.q()?;
            let mut v = own(&ID_STAR_INFINITE);
            v.extend(ID_STAR_FINITE_EXTRA.iter().map(|t| fill(t, q, 0, 0)));
            v
        }
        TheoremId::IdSFinite => {
            let q = params.q()?;
            let mut v = own(&ID_S_INFINITE);
            v.extend(ID_S_FINITE_EXTRA.iter().map(|t| fill(t, q, 0, 0)));
            v
        }
        TheoremId::CentralStarChar0 => own(&["z1*z2", "1"]),
        TheoremId::CentralStarInfCharP => vec!["z1*z2".into(), format!("y1^{}", params.p()?)],
        TheoremId::CentralStarFinite => {
            let q = params.q()?;
            let p = params.p()?;
            let mut v: Vec<String> = (1..=p as u64).map(|l| fill(CENTRAL_STAR_FINITE, q, p, l)).collect();
            v.push("z1*z2".into());
            v
        }
        TheoremId::CentralS => own(&["y1"]),
        TheoremId::CommutationLemma => commutation_texts(),
        TheoremId::EvenZLemma => own(&["1", "z1*z2", "z1*z2*z3*z4"]),
        TheoremId::PowerPQLemma => {
            let q = params.q()?;
            let p = params.p()?;
            vec![format!("y1^{} - y1^{p}", q * p as u64)]
        }
    })
}

/// The generators of `id` over `field`.
///
/// Identity theorems give their generating identities, central theorems
/// the generators of the claimed T(*)-space (identities excluded), basis
/// theorems the identities the basis is taken modulo, and lemmas the
/// polynomials they assert to be identities or central.
pub fn generators_for(id: TheoremId, params: &Params, field: Field) -> Result<Vec<StarPolynomial>> {
    if let (Some(q), Some(size)) = (params.q, field.cardinality()) {
        if q != size {
            return Err(Error::InconsistentPQ { p: field.characteristic(), q });
        }
    }
    generator_texts(id, params)?.iter().map(|t| StarPolynomial::parse(t, field)).collect()
}

/// Conditions a) and b) on `(s_1, .., s_n)`.
pub fn is_lambda(exponents: &[u32], q: u64) -> bool {
    exponents.iter().all(|&s| (s as u64) < 2 * q) && exponents.iter().filter(|&&s| s as u64 >= q).count() <= 1
}

fn product_word(degree: &MultiDegree) -> Word {
    let mut letters = Vec::new();
    for v in degree.variables() {
        for _ in 0..degree.degree_of(v) {
            letters.push(v);
        }
    }
    Word::new(letters)
}

/// `prefix * [z_m, y_k]` where `prefix` is the sorted product for `degree`.
fn commutator_tail(field: Field, prefix: &MultiDegree, zm: Variable, yk: Variable) -> StarPolynomial {
    let p = StarPolynomial::word(field, product_word(prefix));
    let c = StarPolynomial::var(field, zm).commutator(&StarPolynomial::var(field, yk)).expect("same field");
    &p * &c
}

/// Quotient basis elements of `id` with multidegree `degree`.
pub fn basis_words_for_slice(id: TheoremId, degree: &MultiDegree, params: &Params, field: Field) -> Result<Vec<StarPolynomial>> {
    let ys: Vec<Variable> = degree.variables().into_iter().filter(|v| v.kind == VarKind::Y).collect();
    let zm = degree.variables().into_iter().filter(|v| v.kind == VarKind::Z).max();
    let mut out = Vec::new();
    match id {
        TheoremId::BasisStarInfinite => {
            if let Some(zm) = zm {
                for &yk in &ys {
                    let prefix = remove_one(&remove_one(degree, zm), yk);
                    out.push(commutator_tail(field, &prefix, zm, yk));
                }
            }
            out.push(StarPolynomial::word(field, product_word(degree)));
        }
        TheoremId::BasisStarFinite => {
            let q = params.q()?;
            let below = |d: u32| (d as u64) < q;
            match zm {
                Some(zm) => {
                    let rm = degree.degree_of(zm);
                    let others_ok = degree.variables().into_iter().filter(|&v| v != zm).all(|v| below(degree.degree_of(v)));
                    for &yk in &ys {
                        let sk = degree.degree_of(yk) - 1;
                        let rest_ok = degree
                            .variables()
                            .into_iter()
                            .filter(|&v| v != zm && v != yk)
                            .all(|v| below(degree.degree_of(v)));
                        if below(sk) && below(rm) && rest_ok {
                            let prefix = remove_one(&remove_one(degree, zm), yk);
                            out.push(commutator_tail(field, &prefix, zm, yk));
                        }
                    }
                    if below(rm) && others_ok {
                        out.push(StarPolynomial::word(field, product_word(degree)));
                    }
                }
                None => {
                    let s: Vec<u32> = ys.iter().map(|&v| degree.degree_of(v)).collect();
                    if is_lambda(&s, q) {
                        out.push(StarPolynomial::word(field, product_word(degree)));
                    }
                }
            }
        }
        _ => return Err(Error::RegimeMismatch { theorem: id.to_string(), regime: "quotient bases".into() }),
    }
    Ok(out)
}

fn remove_one(degree: &MultiDegree, v: Variable) -> MultiDegree {
    let mut y: Vec<(u32, u32)> = Vec::new();
    let mut z: Vec<(u32, u32)> = Vec::new();
    for u in degree.variables() {
        let d = degree.degree_of(u) - u32::from(u == v);
        if d > 0 {
            match u.kind {
                VarKind::Y => y.push((u.index, d)),
                VarKind::Z => z.push((u.index, d)),
            }
        }
    }
    MultiDegree::new(&y, &z)
}

/// One catalog entry, for dumps.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct CatalogEntry {
    pub theorem: TheoremId,
    pub tag: &'static str,
    pub generators: Vec<String>,
}

/// Every entry whose parameters are available for `field`, with the
/// generators printed back from their parsed form.
pub fn dump(field: Field) -> Vec<CatalogEntry> {
    let params = Params::of_field(field);
    TheoremId::ALL
        .into_iter()
        .filter_map(|id| {
            let gens = generators_for(id, &params, field).ok()?;
            Some(CatalogEntry { theorem: id, tag: id.tag(), generators: gens.iter().map(|g| g.to_string()).collect() })
        })
        .collect()
}
