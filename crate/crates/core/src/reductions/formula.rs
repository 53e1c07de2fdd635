//! 3-DNF formulas over existential `x` and universal `y` variables.

use serde::{Deserialize, Serialize};

use super::ReductionError;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum VarKind {
    X,
    Y,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub struct Literal {
    pub kind: VarKind,
    pub index: usize,
    #[serde(rename = "neg")]
    pub negated: bool,
}

impl Literal {
    pub fn x(index: usize, negated: bool) -> Self {
        Literal {
            kind: VarKind::X,
            index,
            negated,
        }
    }

    pub fn y(index: usize, negated: bool) -> Self {
        Literal {
            kind: VarKind::Y,
            index,
            negated,
        }
    }

    pub fn holds(&self, value: bool) -> bool {
        value != self.negated
    }
}

/// A disjunction of clauses, each a conjunction of three literals.
/// Indices are 0-based.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct Formula3DNF {
    pub n_x: usize,
    pub n_y: usize,
    pub clauses: Vec<Vec<Literal>>,
}

/// The `j`-th occurrence (1-based, counted over the whole formula) of an
/// x-variable.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub struct Occurrence {
    pub row: usize,
    pub clause: usize,
    pub position: usize,
    pub negated: bool,
}

/// A truth assignment of `Y(C)` for clause `clause`. Bit `b` of
/// `pattern` is the value of the `b`-th smallest y-variable of the clause.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize)]
pub struct LocalAssignment {
    pub clause: usize,
    pub pattern: u32,
}

/// Two inconsistent local assignments, `a.clause < b.clause`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize)]
pub struct Inconsistency {
    pub a: LocalAssignment,
    pub b: LocalAssignment,
}

impl Inconsistency {
    pub fn involves(&self, l: LocalAssignment) -> bool {
        self.a == l || self.b == l
    }

    pub fn partner(&self, l: LocalAssignment) -> LocalAssignment {
        if self.a == l {
            self.b
        } else {
            self.a
        }
    }
}

impl Formula3DNF {
    pub fn new(n_x: usize, n_y: usize, clauses: Vec<Vec<Literal>>) -> Result<Self, ReductionError> {
        let f = Formula3DNF { n_x, n_y, clauses };
        f.validate()?;
        Ok(f)
    }

    pub fn validate(&self) -> Result<(), ReductionError> {
        for (i, c) in self.clauses.iter().enumerate() {
            if c.len() != 3 {
                return Err(ReductionError::MalformedClause {
                    clause: i,
                    literals: c.len(),
                });
            }
            for l in c {
                let n = match l.kind {
                    VarKind::X => self.n_x,
                    VarKind::Y => self.n_y,
                };
                if l.index >= n {
                    return Err(ReductionError::InvalidFormula(format!(
                        "clause {i}: variable index {} out of range",
                        l.index
                    )));
                }
            }
        }
        Ok(())
    }

    /// `Y(C)`, increasing.
    pub fn y_vars(&self, clause: usize) -> Vec<usize> {
        let mut v: Vec<usize> = self.clauses[clause]
            .iter()
            .filter(|l| l.kind == VarKind::Y)
            .map(|l| l.index)
            .collect();
        v.sort_unstable();
        v.dedup();
        v
    }

    pub fn local_assignments(&self, clause: usize) -> impl Iterator<Item = LocalAssignment> {
        let n = self.y_vars(clause).len();
        (0..1u32 << n).map(move |pattern| LocalAssignment { clause, pattern })
    }

    /// `(variable, value)` pairs of a local assignment.
    pub fn local_values(&self, l: LocalAssignment) -> Vec<(usize, bool)> {
        self.y_vars(l.clause)
            .into_iter()
            .enumerate()
            .map(|(b, y)| (y, l.pattern >> b & 1 == 1))
            .collect()
    }

    pub fn restrict(&self, clause: usize, ty: &[bool]) -> LocalAssignment {
        let pattern = self
            .y_vars(clause)
            .into_iter()
            .enumerate()
            .fold(0, |acc, (b, y)| acc | (ty[y] as u32) << b);
        LocalAssignment { clause, pattern }
    }

    /// True iff some y-literal of the clause is false under `l`.
    pub fn falsifies_y_literal(&self, l: LocalAssignment) -> bool {
        let vals = self.local_values(l);
        self.clauses[l.clause]
            .iter()
            .filter(|lit| lit.kind == VarKind::Y)
            .any(|lit| {
                let v = vals.iter().find(|(y, _)| *y == lit.index).unwrap().1;
                !lit.holds(v)
            })
    }

    /// Occurrences of each x-variable in clause order.
    pub fn x_occurrences(&self) -> Vec<Vec<Occurrence>> {
        let mut occ = vec![Vec::new(); self.n_x];
        for (c, lits) in self.clauses.iter().enumerate() {
            for (pos, l) in lits.iter().enumerate() {
                if l.kind == VarKind::X {
                    let list: &mut Vec<Occurrence> = &mut occ[l.index];
                    list.push(Occurrence {
                        row: list.len() + 1,
                        clause: c,
                        position: pos,
                        negated: l.negated,
                    });
                }
            }
        }
        occ
    }

    fn clauses_containing(&self, kind: VarKind, index: usize) -> usize {
        self.clauses
            .iter()
            .filter(|c| c.iter().any(|l| l.kind == kind && l.index == index))
            .count()
    }
}

fn value(l: &Literal, tx: &[bool], ty: &[bool]) -> bool {
    let v = match l.kind {
        VarKind::X => tx[l.index],
        VarKind::Y => ty[l.index],
    };
    l.holds(v)
}

pub fn clause_holds(phi: &Formula3DNF, clause: usize, tx: &[bool], ty: &[bool]) -> bool {
    phi.clauses[clause].iter().all(|l| value(l, tx, ty))
}

/// DNF semantics: some clause has all literals true.
pub fn sigma2_eval(phi: &Formula3DNF, tx: &[bool], ty: &[bool]) -> bool {
    (0..phi.clauses.len()).any(|c| clause_holds(phi, c, tx, ty))
}

/// The `index`-th assignment of `n` variables in lexicographic order
/// (`false < true`, first variable most significant).
pub fn nth_assignment(n: usize, index: u64) -> Vec<bool> {
    (0..n).map(|i| index >> (n - 1 - i) & 1 == 1).collect()
}

/// First `T_Y` (lexicographically) falsifying `phi` under `tx`.
pub fn falsifying_y(phi: &Formula3DNF, tx: &[bool]) -> Option<Vec<bool>> {
    (0..1u64 << phi.n_y)
        .map(|i| nth_assignment(phi.n_y, i))
        .find(|ty| !sigma2_eval(phi, tx, ty))
}

/// First `T_X` (lexicographically) under which `phi` holds for all `T_Y`.
pub fn sigma2_brute(phi: &Formula3DNF) -> Option<Vec<bool>> {
    (0..1u64 << phi.n_x)
        .map(|i| nth_assignment(phi.n_x, i))
        .find(|tx| falsifying_y(phi, tx).is_none())
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
#[serde(tag = "status", rename_all = "kebab-case")]
pub enum Normalized {
    Formula {
        formula: Formula3DNF,
        duplicated: bool,
    },
    /// A consistent all-x clause can be made true by `T_X` alone.
    TriviallySatisfiable { clause: usize },
    /// Every clause was contradictory and got removed.
    TriviallyUnsatisfiable,
}

/// Drops contradictory all-x clauses, short-circuits on a consistent one,
/// and duplicates all clauses once if some occurring variable is in fewer
/// than two clauses.
pub fn normalize_formula(phi: &Formula3DNF) -> Result<Normalized, ReductionError> {
    phi.validate()?;
    let mut kept = Vec::new();
    for (i, c) in phi.clauses.iter().enumerate() {
        if c.iter().all(|l| l.kind == VarKind::X) {
            let contradictory = c.iter().any(|l| {
                c.iter()
                    .any(|o| o.index == l.index && o.negated != l.negated)
            });
            if contradictory {
                continue;
            }
            return Ok(Normalized::TriviallySatisfiable { clause: i });
        }
        kept.push(c.clone());
    }
    if kept.is_empty() {
        return Ok(Normalized::TriviallyUnsatisfiable);
    }
    let mut f = Formula3DNF {
        n_x: phi.n_x,
        n_y: phi.n_y,
        clauses: kept,
    };
    let rare = |f: &Formula3DNF, kind: VarKind, n: usize| {
        (0..n).any(|i| {
            let c = f.clauses_containing(kind, i);
            c == 1
        })
    };
    let duplicated = rare(&f, VarKind::X, f.n_x) || rare(&f, VarKind::Y, f.n_y);
    if duplicated {
        let copy = f.clauses.clone();
        f.clauses.extend(copy);
    }
    Ok(Normalized::Formula {
        formula: f,
        duplicated,
    })
}

/// Every inconsistent pair of local assignments of distinct clauses,
/// ordered by (clause, pattern) of the first and then of the second.
pub fn find_inconsistencies(phi: &Formula3DNF) -> Vec<Inconsistency> {
    let m = phi.clauses.len();
    let values: Vec<Vec<Vec<(usize, bool)>>> = (0..m)
        .map(|c| {
            phi.local_assignments(c)
                .map(|l| phi.local_values(l))
                .collect()
        })
        .collect();
    let mut out = Vec::new();
    for (i, row_a) in values.iter().enumerate() {
        for (pa, va) in row_a.iter().enumerate() {
            for (j, row_b) in values.iter().enumerate().skip(i + 1) {
                for (pb, vb) in row_b.iter().enumerate() {
                    let clash = va
                        .iter()
                        .any(|(y, x)| vb.iter().any(|(z, w)| y == z && x != w));
                    if clash {
                        out.push(Inconsistency {
                            a: LocalAssignment {
                                clause: i,
                                pattern: pa as u32,
                            },
                            b: LocalAssignment {
                                clause: j,
                                pattern: pb as u32,
                            },
                        });
                    }
                }
            }
        }
    }
    out
}

/// `(x1 & x1 & y1) | (!x1 & !x1 & !y1)`: no `T_X` survives every `T_Y`.
pub fn phi_unsat() -> Formula3DNF {
    let (x, y) = (Literal::x, Literal::y);
    Formula3DNF::new(
        1,
        1,
        vec![
            vec![x(0, false), x(0, false), y(0, false)],
            vec![x(0, true), x(0, true), y(0, true)],
        ],
    )
    .unwrap()
}

/// `x1` together with all four sign patterns of `(y1, y2)`.
pub fn phi_sat4() -> Formula3DNF {
    let (x, y) = (Literal::x, Literal::y);
    let clauses = [(false, false), (false, true), (true, false), (true, true)]
        .into_iter()
        .map(|(a, b)| vec![x(0, false), y(0, a), y(1, b)])
        .collect();
    Formula3DNF::new(1, 2, clauses).unwrap()
}
