//! Linear systems describing forest polytopes, directly or through
//! auxiliary variables.

mod compose;
mod edmonds;
mod martin;
mod recursive;

pub use compose::{product_compose, stp_from_fp, SystemPart};
pub use edmonds::edmonds_system;
pub use martin::{
    append_martin_q, forest_witness, martin_q, parse_arc_tag, q_arcs, ArcTag, Node, APEX_TAG,
};
pub use recursive::{edmonds_base, recursive_ef, LedgerEntry, SizeLedger};

use std::collections::BTreeMap;
use std::fmt::Write as _;

use thiserror::Error;

use crate::graph::GraphError;
use crate::separators::SeparatorError;
use crate::Rational;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum FormulationError {
    #[error(transparent)]
    Graph(#[from] GraphError),
    #[error(transparent)]
    Separator(#[from] SeparatorError),
    #[error("root vertex {0} out of range")]
    RootOutOfRange(usize),
    #[error("component edge maps do not partition the host edges: {0}")]
    NotPartition(String),
    #[error("system file line {line}: {msg}")]
    Parse { line: usize, msg: String },
    #[error("row references variable {var} but the system has {count}")]
    UnknownVariable { var: usize, count: usize },
}

/// One row `Σ coeffs · v  (<= | =)  rhs`. Coefficients are sorted by
/// variable, without duplicates or zeros.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Row {
    pub coeffs: Vec<(usize, Rational)>,
    pub rhs: Rational,
}

impl Row {
    pub fn new(coeffs: impl IntoIterator<Item = (usize, Rational)>, rhs: Rational) -> Self {
        let mut merged: BTreeMap<usize, Rational> = BTreeMap::new();
        for (v, c) in coeffs {
            *merged.entry(v).or_insert_with(Rational::zero) += c;
        }
        Row {
            coeffs: merged.into_iter().filter(|(_, c)| !c.is_zero()).collect(),
            rhs,
        }
    }

    pub fn lhs(&self, point: &[Rational]) -> Rational {
        self.coeffs.iter().map(|(v, c)| c * &point[*v]).sum()
    }

    fn write(&self, out: &mut String, kind: &str) {
        write!(out, "{kind} {}", self.rhs.to_fraction_string()).unwrap();
        for (v, c) in &self.coeffs {
            write!(out, " {v}:{}", c.to_fraction_string()).unwrap();
        }
        out.push('\n');
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum RowKind {
    Inequality,
    Equality,
}

/// A row the point fails.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Violation {
    pub kind: RowKind,
    pub index: usize,
    pub lhs: Rational,
    pub rhs: Rational,
}

/// `A x + B y <= b, C x + D y = c`. Variables `0..num_orig` are the edge
/// variables `x`, the rest are auxiliary. Only inequalities count towards
/// the size.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct LinearSystem {
    pub num_orig: usize,
    pub tags: Vec<String>,
    pub inequalities: Vec<Row>,
    pub equalities: Vec<Row>,
}

impl LinearSystem {
    pub fn new(num_orig: usize) -> Self {
        LinearSystem {
            num_orig,
            tags: (0..num_orig).map(|e| format!("x{e}")).collect(),
            inequalities: Vec::new(),
            equalities: Vec::new(),
        }
    }

    pub fn size(&self) -> usize {
        self.inequalities.len()
    }

    pub fn num_vars(&self) -> usize {
        self.tags.len()
    }

    pub fn num_aux(&self) -> usize {
        self.tags.len() - self.num_orig
    }

    pub fn add_aux(&mut self, tag: impl Into<String>) -> usize {
        self.tags.push(tag.into());
        self.tags.len() - 1
    }

    pub fn add_inequality(&mut self, row: Row) {
        self.inequalities.push(row);
    }

    pub fn add_equality(&mut self, row: Row) {
        self.equalities.push(row);
    }

    /// Every row references an existing variable.
    pub fn check_references(&self) -> Result<(), FormulationError> {
        let count = self.num_vars();
        for row in self.inequalities.iter().chain(&self.equalities) {
            if let Some(&(var, _)) = row.coeffs.iter().find(|(v, _)| *v >= count) {
                return Err(FormulationError::UnknownVariable { var, count });
            }
        }
        Ok(())
    }

    /// First violated row, inequalities before equalities.
    pub fn first_violation(&self, point: &[Rational]) -> Option<Violation> {
        self.violations(point).next()
    }

    pub fn violations<'a>(&'a self, point: &'a [Rational]) -> impl Iterator<Item = Violation> + 'a {
        assert_eq!(point.len(), self.num_vars(), "point length");
        let ineq = self.inequalities.iter().enumerate().filter_map(move |(i, r)| {
            let lhs = r.lhs(point);
            (lhs > r.rhs).then(|| Violation {
                kind: RowKind::Inequality,
                index: i,
                lhs,
                rhs: r.rhs.clone(),
            })
        });
        let eq = self.equalities.iter().enumerate().filter_map(move |(i, r)| {
            let lhs = r.lhs(point);
            (lhs != r.rhs).then(|| Violation {
                kind: RowKind::Equality,
                index: i,
                lhs,
                rhs: r.rhs.clone(),
            })
        });
        ineq.chain(eq)
    }

    /// Append `other`, mapping its original variable `e` to `orig_map[e]`
    /// and giving its auxiliary variables fresh indices with tags passed
    /// through `rename`.
    pub fn absorb(&mut self, other: &LinearSystem, orig_map: &[usize], rename: impl Fn(&str) -> String) {
        assert_eq!(orig_map.len(), other.num_orig);
        let mut map: Vec<usize> = orig_map.to_vec();
        for tag in &other.tags[other.num_orig..] {
            map.push(self.add_aux(rename(tag)));
        }
        let lift = |r: &Row| Row {
            coeffs: {
                let mut c: Vec<_> = r.coeffs.iter().map(|(v, c)| (map[*v], c.clone())).collect();
                c.sort_by_key(|(v, _)| *v);
                c
            },
            rhs: r.rhs.clone(),
        };
        for r in &other.inequalities {
            let row = lift(r);
            self.inequalities.push(row);
        }
        for r in &other.equalities {
            let row = lift(r);
            self.equalities.push(row);
        }
    }

    /// `vars <k> orig <m>`, one `v<i> <tag>` line per variable, then rows.
    pub fn to_text(&self) -> String {
        let mut out = format!("vars {} orig {}\n", self.num_vars(), self.num_orig);
        for (i, t) in self.tags.iter().enumerate() {
            writeln!(out, "v{i} {t}").unwrap();
        }
        for r in &self.inequalities {
            r.write(&mut out, "INEQ");
        }
        for r in &self.equalities {
            r.write(&mut out, "EQ");
        }
        out
    }

    pub fn from_text(text: &str) -> Result<Self, FormulationError> {
        let mut lines = text
            .lines()
            .enumerate()
            .map(|(i, l)| (i + 1, l.trim()))
            .filter(|(_, l)| !l.is_empty() && !l.starts_with('#'));
        let err = |line: usize, msg: &str| FormulationError::Parse {
            line,
            msg: msg.to_string(),
        };
        let (hl, header) = lines.next().ok_or_else(|| err(0, "empty file"))?;
        let h: Vec<&str> = header.split_whitespace().collect();
        let (k, m) = match h.as_slice() {
            ["vars", k, "orig", m] => (
                k.parse::<usize>().map_err(|_| err(hl, "bad variable count"))?,
                m.parse::<usize>().map_err(|_| err(hl, "bad original count"))?,
            ),
            _ => return Err(err(hl, "expected header 'vars <k> orig <m>'")),
        };
        if m > k {
            return Err(err(hl, "more original variables than variables"));
        }
        let mut sys = LinearSystem {
            num_orig: m,
            tags: Vec::with_capacity(k),
            inequalities: Vec::new(),
            equalities: Vec::new(),
        };
        for i in 0..k {
            let (ln, l) = lines.next().ok_or_else(|| err(0, "missing variable lines"))?;
            let (name, tag) = l.split_once(' ').ok_or_else(|| err(ln, "expected 'v<i> <tag>'"))?;
            if name != format!("v{i}") {
                return Err(err(ln, &format!("expected v{i}")));
            }
            sys.tags.push(tag.trim().to_string());
        }
        for (ln, l) in lines {
            let mut parts = l.split_whitespace();
            let kind = parts.next().unwrap();
            let rhs: Rational = parts
                .next()
                .ok_or_else(|| err(ln, "missing right-hand side"))?
                .parse()
                .map_err(|_| err(ln, "bad right-hand side"))?;
            let mut coeffs = Vec::new();
            for p in parts {
                let (v, c) = p.split_once(':').ok_or_else(|| err(ln, "expected <idx>:<coef>"))?;
                let v: usize = v.parse().map_err(|_| err(ln, "bad variable index"))?;
                if v >= k {
                    return Err(err(ln, &format!("variable {v} out of range")));
                }
                let c: Rational = c.parse().map_err(|_| err(ln, "bad coefficient"))?;
                coeffs.push((v, c));
            }
            let row = Row::new(coeffs, rhs);
            match kind {
                "INEQ" => sys.inequalities.push(row),
                "EQ" => sys.equalities.push(row),
                other => return Err(err(ln, &format!("unknown row kind {other:?}"))),
            }
        }
        Ok(sys)
    }
}
