use std::cmp::Ordering;
use std::collections::BTreeMap;
use std::fmt;

use serde::{Deserialize, Serialize};

/// Symmetric (`Y`) or skew-symmetric (`Z`) generator. `Y < Z` in the term order.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub enum VarKind {
    Y,
    Z,
}

/// A generator `y_k` or `z_k`, `k >= 1`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub struct Variable {
    pub kind: VarKind,
    pub index: u32,
}

impl Variable {
    pub const fn y(index: u32) -> Variable {
        assert!(index >= 1, "variable indices start at 1");
        Variable { kind: VarKind::Y, index }
    }

    pub const fn z(index: u32) -> Variable {
        assert!(index >= 1, "variable indices start at 1");
        Variable { kind: VarKind::Z, index }
    }

    pub fn is_skew(&self) -> bool {
        self.kind == VarKind::Z
    }
}

impl fmt::Display for Variable {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self.kind {
            VarKind::Y => write!(f, "y{}", self.index),
            VarKind::Z => write!(f, "z{}", self.index),
        }
    }
}

/// A monomial of the free algebra. The empty word is the unit.
///
/// Ordered by length first, then letter by letter.
#[derive(Clone, Debug, PartialEq, Eq, Hash, Default, Serialize, Deserialize)]
pub struct Word(Vec<Variable>);

impl Word {
    pub fn unit() -> Word {
        Word(Vec::new())
    }

    pub fn new(letters: Vec<Variable>) -> Word {
        Word(letters)
    }

    pub fn letter(v: Variable) -> Word {
        Word(vec![v])
    }

    pub fn letters(&self) -> &[Variable] {
        &self.0
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn concat(&self, other: &Word) -> Word {
        let mut letters = Vec::with_capacity(self.0.len() + other.0.len());
        letters.extend_from_slice(&self.0);
        letters.extend_from_slice(&other.0);
        Word(letters)
    }

    pub fn reversed(&self) -> Word {
        Word(self.0.iter().rev().copied().collect())
    }

    pub fn z_count(&self) -> usize {
        self.0.iter().filter(|v| v.is_skew()).count()
    }

    /// Sign picked up under the involution: `w* = sign * reverse(w)`.
    pub fn involution_sign(&self) -> i64 {
        if self.z_count().is_multiple_of(2) {
            1
        } else {
            -1
        }
    }

    pub fn multi_degree(&self) -> MultiDegree {
        let mut d = MultiDegree::default();
        for v in &self.0 {
            d.add(*v, 1);
        }
        d
    }
}

impl PartialOrd for Word {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl Ord for Word {
    fn cmp(&self, other: &Self) -> Ordering {
        self.0.len().cmp(&other.0.len()).then_with(|| self.0.cmp(&other.0))
    }
}

impl fmt::Display for Word {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.0.is_empty() {
            return write!(f, "1");
        }
        let mut first = true;
        let mut i = 0;
        while i < self.0.len() {
            let v = self.0[i];
            let mut run = 1;
            while i + run < self.0.len() && self.0[i + run] == v {
                run += 1;
            }
            if !first {
                write!(f, "*")?;
            }
            first = false;
            if run == 1 {
                write!(f, "{v}")?;
            } else {
                write!(f, "{v}^{run}")?;
            }
            i += run;
        }
        Ok(())
    }
}

/// Per-variable degrees. Zero entries are never stored.
#[derive(Clone, Debug, Default, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub struct MultiDegree {
    pub y: BTreeMap<u32, u32>,
    pub z: BTreeMap<u32, u32>,
}

impl MultiDegree {
    pub fn new(y: &[(u32, u32)], z: &[(u32, u32)]) -> MultiDegree {
        let mut d = MultiDegree::default();
        for &(i, e) in y {
            d.add(Variable::y(i), e);
        }
        for &(i, e) in z {
            d.add(Variable::z(i), e);
        }
        d
    }

    pub fn add(&mut self, v: Variable, e: u32) {
        if e == 0 {
            return;
        }
        let map = match v.kind {
            VarKind::Y => &mut self.y,
            VarKind::Z => &mut self.z,
        };
        *map.entry(v.index).or_insert(0) += e;
    }

    pub fn degree_of(&self, v: Variable) -> u32 {
        let map = match v.kind {
            VarKind::Y => &self.y,
            VarKind::Z => &self.z,
        };
        map.get(&v.index).copied().unwrap_or(0)
    }

    pub fn total(&self) -> u32 {
        self.y.values().sum::<u32>() + self.z.values().sum::<u32>()
    }

    /// Variables with positive degree, in term order.
    pub fn variables(&self) -> Vec<Variable> {
        self.y
            .keys()
            .map(|&i| Variable::y(i))
            .chain(self.z.keys().map(|&i| Variable::z(i)))
            .collect()
    }

    /// Every word of this multidegree, in term order.
    pub fn words(&self) -> Vec<Word> {
        let vars = self.variables();
        let mut remaining: Vec<u32> = vars.iter().map(|v| self.degree_of(*v)).collect();
        let mut out = Vec::new();
        let mut current = Vec::with_capacity(self.total() as usize);
        fn rec(
            vars: &[Variable],
            remaining: &mut [u32],
            current: &mut Vec<Variable>,
            out: &mut Vec<Word>,
        ) {
            if remaining.iter().all(|&r| r == 0) {
                out.push(Word(current.clone()));
                return;
            }
            for i in 0..vars.len() {
                if remaining[i] > 0 {
                    remaining[i] -= 1;
                    current.push(vars[i]);
                    rec(vars, remaining, current, out);
                    current.pop();
                    remaining[i] += 1;
                }
            }
        }
        rec(&vars, &mut remaining, &mut current, &mut out);
        out
    }

    /// All multidegrees over `y_1..y_n`, `z_1..z_m` with every listed
    /// variable present, of total degree at most `max_total`. The constant
    /// multidegree comes first; the rest follow by total degree.
    pub fn consecutive_up_to(max_total: u32) -> Vec<MultiDegree> {
        fn compositions(total: u32) -> Vec<Vec<u32>> {
            if total == 0 {
                return vec![Vec::new()];
            }
            let mut out = Vec::new();
            for first in 1..=total {
                for mut rest in compositions(total - first) {
                    rest.insert(0, first);
                    out.push(rest);
                }
            }
            out
        }
        let mut out = Vec::new();
        for total in 0..=max_total {
            for ytotal in (0..=total).rev() {
                for ys in compositions(ytotal) {
                    for zs in compositions(total - ytotal) {
                        let y: Vec<(u32, u32)> =
                            ys.iter().enumerate().map(|(i, &e)| (i as u32 + 1, e)).collect();
                        let z: Vec<(u32, u32)> =
                            zs.iter().enumerate().map(|(i, &e)| (i as u32 + 1, e)).collect();
                        out.push(MultiDegree::new(&y, &z));
                    }
                }
            }
        }
        out
    }
}

impl fmt::Display for MultiDegree {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let parts: Vec<String> = self
            .variables()
            .into_iter()
            .map(|v| format!("{v}:{}", self.degree_of(v)))
            .collect();
        write!(f, "({})", parts.join(","))
    }
}
