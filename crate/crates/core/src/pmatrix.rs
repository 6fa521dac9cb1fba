//! Closed-form P̂-matrices, λ-vectors and their Hankel decompositions.
//!
//! Indices in the generating formulas are 1-based and refer to `p_k`; each
//! family resolves the out-of-range symbols `p_0`, `p_{-1}`, `p_{n+k}`
//! before any polynomial is built, so no placeholder variables appear.

use std::fmt;
use std::str::FromStr;
use std::sync::Arc;

use num_bigint::BigInt;
use num_traits::One;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::invariants::{Family, GroupSpec};
use crate::polyring::matrix::{self, PolyGrid};
use crate::polyring::{q, Monomial, Poly, PolyJson, Rational, VarSet};

pub const DEFAULT_RANK_CAP: usize = 64;
pub const DEFAULT_DET_CAP: usize = 6;

/// Fails with `CapExceeded` when `g` is larger than `cap`.
pub fn check_rank_cap(g: &GroupSpec, cap: usize) -> Result<()> {
    if g.rank() > cap {
        return Err(Error::CapExceeded {
            what: format!("{g} matrix generation"),
            rank: g.rank(),
            cap,
        });
    }
    Ok(())
}

/// Resolution of the symbols `p_k` for one family's formula.
#[derive(Clone)]
struct Atoms {
    n: usize,
    p0_is_one: bool,
    square_last: bool,
}

impl Atoms {
    fn new(n: usize, p0_is_one: bool) -> Self {
        Atoms {
            n,
            p0_is_one,
            square_last: false,
        }
    }

    fn squaring_last(mut self) -> Self {
        self.square_last = true;
        self
    }

    fn get(&self, k: i64) -> Option<Monomial> {
        if k < 0 || k as usize > self.n {
            return None;
        }
        if k == 0 {
            return self.p0_is_one.then(|| Monomial::one(self.n));
        }
        let k = k as usize;
        let e = if self.square_last && k == self.n {
            2
        } else {
            1
        };
        Some(Monomial::var(self.n, k - 1, e))
    }

    /// Adds `c * p_i * p_j` (or `c * p_i` when `j` is `None`).
    fn add(&self, p: &mut Poly, c: i64, i: i64, j: Option<i64>) {
        if c == 0 {
            return;
        }
        let Some(mut m) = self.get(i) else { return };
        if let Some(j) = j {
            let Some(mj) = self.get(j) else { return };
            m = m.mul(&mj);
        }
        p.add_term(m, q(c));
    }
}

/// Which active polynomial a λ-vector belongs to.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum ActiveName {
    Det,
    Short,
    Long,
    Pn,
    APlus,
    AMinus,
}

impl ActiveName {
    pub fn as_str(&self) -> &'static str {
        match self {
            ActiveName::Det => "det",
            ActiveName::Short => "short",
            ActiveName::Long => "long",
            ActiveName::Pn => "pn",
            ActiveName::APlus => "a_plus",
            ActiveName::AMinus => "a_minus",
        }
    }

    pub fn is_valid_for(&self, g: &GroupSpec) -> bool {
        match self {
            ActiveName::Det => true,
            ActiveName::Short | ActiveName::Long | ActiveName::Pn => g.family() == Family::B,
            ActiveName::APlus | ActiveName::AMinus => g.m().is_some_and(|m| m % 2 == 0),
        }
    }
}

impl fmt::Display for ActiveName {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.as_str())
    }
}

impl FromStr for ActiveName {
    type Err = Error;
    fn from_str(s: &str) -> Result<Self> {
        Ok(match s {
            "det" => ActiveName::Det,
            "short" => ActiveName::Short,
            "long" => ActiveName::Long,
            "pn" => ActiveName::Pn,
            "a_plus" | "a+" => ActiveName::APlus,
            "a_minus" | "a-" => ActiveName::AMinus,
            _ => return Err(Error::Parse(format!("unknown active polynomial `{s}`"))),
        })
    }
}

/// A P̂-matrix in some basis of the group's invariants.
#[derive(Clone, Debug, PartialEq)]
pub struct PMatrix {
    pub group: GroupSpec,
    pub basis: String,
    entries: PolyGrid,
}

impl PMatrix {
    pub fn new(group: GroupSpec, basis: impl Into<String>, entries: PolyGrid) -> Self {
        assert_eq!(entries.len(), group.rank(), "matrix size");
        PMatrix {
            group,
            basis: basis.into(),
            entries,
        }
    }

    pub fn n(&self) -> usize {
        self.entries.len()
    }

    pub fn vars(&self) -> &Arc<VarSet> {
        self.entries[0][0].vars()
    }

    pub fn entries(&self) -> &PolyGrid {
        &self.entries
    }

    pub fn into_entries(self) -> PolyGrid {
        self.entries
    }

    /// Entry at 1-based position `(a, b)`.
    pub fn entry(&self, a: usize, b: usize) -> &Poly {
        &self.entries[a - 1][b - 1]
    }

    pub fn is_symmetric(&self) -> bool {
        matrix::is_symmetric(&self.entries)
    }

    /// Same entries over a renamed variable set of equal weights.
    pub fn rename(&self, prefix: &str) -> PMatrix {
        let vars = VarSet::named(prefix, &self.vars().weights());
        let entries = self
            .entries
            .iter()
            .map(|r| {
                r.iter()
                    .map(|p| p.rename(&vars).expect("same length"))
                    .collect()
            })
            .collect();
        PMatrix::new(self.group, self.basis.clone(), entries)
    }

    /// Entrywise derivative with respect to variable `i` (0-based).
    pub fn differentiate(&self, i: usize) -> PolyGrid {
        self.entries
            .iter()
            .map(|r| r.iter().map(|p| p.differentiate(i)).collect())
            .collect()
    }

    pub fn to_text(&self) -> String {
        grid_text(&self.entries)
    }

    pub fn to_latex(&self) -> String {
        grid_latex(&self.entries)
    }
}

pub fn grid_text(g: &PolyGrid) -> String {
    let mut out = String::new();
    for row in g {
        let cells: Vec<String> = row.iter().map(|p| p.to_string()).collect();
        out.push('[');
        out.push_str(&cells.join(", "));
        out.push_str("]\n");
    }
    out
}

pub fn grid_latex(g: &PolyGrid) -> String {
    let rows: Vec<String> = g
        .iter()
        .map(|r| {
            r.iter()
                .map(|p| p.to_latex())
                .collect::<Vec<_>>()
                .join(" & ")
        })
        .collect();
    format!(
        "\\begin{{pmatrix}}\n{}\n\\end{{pmatrix}}\n",
        rows.join(" \\\\\n")
    )
}

#[derive(Serialize, Deserialize)]
struct Metadata {
    group: GroupSpec,
    family: String,
    rank: usize,
    degrees: Vec<u32>,
    basis: String,
}

impl Metadata {
    fn of(g: &GroupSpec, basis: &str) -> Self {
        Metadata {
            group: *g,
            family: format!("{:?}", g.family()),
            rank: g.rank(),
            degrees: g.degrees(),
            basis: basis.to_string(),
        }
    }
}

#[derive(Serialize, Deserialize)]
struct PMatrixJson {
    metadata: Metadata,
    entries: Vec<Vec<PolyJson>>,
}

impl Serialize for PMatrix {
    fn serialize<S: serde::Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        PMatrixJson {
            metadata: Metadata::of(&self.group, &self.basis),
            entries: self
                .entries
                .iter()
                .map(|r| r.iter().map(PolyJson::from).collect())
                .collect(),
        }
        .serialize(s)
    }
}

impl<'de> Deserialize<'de> for PMatrix {
    fn deserialize<D: serde::Deserializer<'de>>(d: D) -> std::result::Result<Self, D::Error> {
        use serde::de::Error as _;
        let j = PMatrixJson::deserialize(d)?;
        let n = j.metadata.group.rank();
        if j.entries.len() != n || j.entries.iter().any(|r| r.len() != n) {
            return Err(D::Error::custom(format!("expected a {n}x{n} matrix")));
        }
        let mut vars: Option<Arc<VarSet>> = None;
        let mut entries = Vec::with_capacity(n);
        for row in j.entries {
            let mut out = Vec::with_capacity(n);
            for pj in row {
                let p = pj.into_poly(vars.as_ref()).map_err(D::Error::custom)?;
                vars.get_or_insert_with(|| p.vars().clone());
                out.push(p);
            }
            entries.push(out);
        }
        Ok(PMatrix::new(j.metadata.group, j.metadata.basis, entries))
    }
}

/// λ-vector of an active polynomial.
#[derive(Clone, Debug, PartialEq)]
pub struct LambdaVector {
    pub group: GroupSpec,
    pub active: ActiveName,
    pub components: Vec<Poly>,
}

impl LambdaVector {
    pub fn vars(&self) -> &Arc<VarSet> {
        self.components[0].vars()
    }

    pub fn to_text(&self) -> String {
        let c: Vec<String> = self.components.iter().map(|p| p.to_string()).collect();
        format!("({})\n", c.join(", "))
    }

    pub fn to_latex(&self) -> String {
        let c: Vec<String> = self.components.iter().map(|p| p.to_latex()).collect();
        format!("\\begin{{pmatrix}} {} \\end{{pmatrix}}\n", c.join(" & "))
    }
}

#[derive(Serialize, Deserialize)]
struct LambdaJson {
    group: GroupSpec,
    active: ActiveName,
    components: Vec<PolyJson>,
}

impl Serialize for LambdaVector {
    fn serialize<S: serde::Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        LambdaJson {
            group: self.group,
            active: self.active,
            components: self.components.iter().map(PolyJson::from).collect(),
        }
        .serialize(s)
    }
}

impl<'de> Deserialize<'de> for LambdaVector {
    fn deserialize<D: serde::Deserializer<'de>>(d: D) -> std::result::Result<Self, D::Error> {
        use serde::de::Error as _;
        let j = LambdaJson::deserialize(d)?;
        let mut vars: Option<Arc<VarSet>> = None;
        let mut components = Vec::new();
        for pj in j.components {
            let p = pj.into_poly(vars.as_ref()).map_err(D::Error::custom)?;
            vars.get_or_insert_with(|| p.vars().clone());
            components.push(p);
        }
        if components.len() != j.group.rank() {
            return Err(D::Error::custom("component count differs from rank"));
        }
        Ok(LambdaVector {
            group: j.group,
            active: j.active,
            components,
        })
    }
}

fn build_grid(g: &GroupSpec, mut f: impl FnMut(&Arc<VarSet>, i64, i64) -> Poly) -> PolyGrid {
    let vars = g.p_vars();
    let n = g.rank() as i64;
    (1..=n)
        .map(|a| (1..=n).map(|b| f(&vars, a, b)).collect())
        .collect()
}

fn s_entry(vars: &Arc<VarSet>, at: &Atoms, n: i64, a: i64, b: i64) -> Poly {
    let mut p = Poly::zero(vars);
    let lo = a.min(b);
    at.add(&mut p, n + 1 - lo, a - 1, Some(b - 1));
    for i in 1.max(a + b - n - 1)..=lo {
        at.add(&mut p, -(a + b - 2 * i), i - 1, Some(a + b - 1 - i));
    }
    p
}

fn a_entry(vars: &Arc<VarSet>, at: &Atoms, n: i64, a: i64, b: i64) -> Poly {
    let mut p = Poly::zero(vars);
    let lo = a.min(b);
    at.add(&mut p, (n + 1) * lo - a * b, a - 1, Some(b - 1));
    at.add(&mut p, 2 * (a + b), a + b - 1, None);
    for i in 2.max(a + b - n - 1)..lo {
        at.add(
            &mut p,
            -(n + 1) * (a + b - 2 * i),
            i - 1,
            Some(a + b - 1 - i),
        );
    }
    p
}

fn b_entry(vars: &Arc<VarSet>, at: &Atoms, n: i64, a: i64, b: i64) -> Poly {
    let mut p = Poly::zero(vars);
    for i in 0.max(a + b - n - 1)..a.min(b) {
        at.add(&mut p, 4 * (a + b - 1 - 2 * i), i, Some(a + b - 1 - i));
    }
    p
}

/// Last row and column of the `D_n` matrix (shared by both generating forms).
fn d_edge(vars: &Arc<VarSet>, at: &Atoms, n: i64, a: i64, b: i64) -> Option<Poly> {
    let mut p = Poly::zero(vars);
    match (a == n, b == n) {
        (false, false) => return None,
        (true, true) => at.add(&mut p, 1, n - 1, None),
        (true, false) => at.add(&mut p, 2 * (n - b + 1), b - 1, Some(n)),
        (false, true) => at.add(&mut p, 2 * (n - a + 1), a - 1, Some(n)),
    }
    Some(p)
}

fn i2_grid(g: &GroupSpec) -> PolyGrid {
    let m = g.m().expect("dihedral");
    let vars = g.p_vars();
    let p1 = Poly::var(&vars, 0);
    let p2 = Poly::var(&vars, 1);
    let mi = m as i64;
    vec![
        vec![p1.scale_int(4), p2.scale_int(2 * mi)],
        vec![p2.scale_int(2 * mi), p1.pow(m - 1).scale_int(mi * mi)],
    ]
}

/// P̂-matrix of `g` in the paper basis.
pub fn generate_pmatrix(g: &GroupSpec) -> PMatrix {
    let n = g.rank();
    let ni = n as i64;
    let entries = match g.family() {
        Family::S => {
            let at = Atoms::new(n, true);
            build_grid(g, |v, a, b| s_entry(v, &at, ni, a, b))
        }
        Family::A => {
            let at = Atoms::new(n, false);
            build_grid(g, |v, a, b| a_entry(v, &at, ni, a, b))
        }
        Family::B => {
            let at = Atoms::new(n, true);
            build_grid(g, |v, a, b| b_entry(v, &at, ni, a, b))
        }
        Family::D => {
            let edge = Atoms::new(n, true);
            let block = Atoms::new(n, true).squaring_last();
            build_grid(g, |v, a, b| {
                d_edge(v, &edge, ni, a, b).unwrap_or_else(|| b_entry(v, &block, ni, a, b))
            })
        }
        Family::I2 => i2_grid(g),
    };
    PMatrix::new(*g, "paper", entries)
}

fn s_alt(vars: &Arc<VarSet>, at: &Atoms, n: i64, a: i64, b: i64) -> Poly {
    let mut p = Poly::zero(vars);
    at.add(&mut p, n + 1 - b, a - 1, Some(b - 1));
    for i in 1..a {
        at.add(&mut p, a - b - 2 * i, a - 1 - i, Some(b - 1 + i));
    }
    p
}

fn a_alt(vars: &Arc<VarSet>, at: &Atoms, n: i64, a: i64, b: i64) -> Poly {
    let mut p = Poly::zero(vars);
    at.add(&mut p, a * (n + 1 - b), a - 1, Some(b - 1));
    at.add(&mut p, 2 * (a + b), a + b - 1, None);
    for i in 1..a - 1 {
        at.add(
            &mut p,
            (n + 1) * (a - b - 2 * i),
            a - 1 - i,
            Some(b - 1 + i),
        );
    }
    p
}

fn b_alt(vars: &Arc<VarSet>, at: &Atoms, a: i64, b: i64) -> Poly {
    let mut p = Poly::zero(vars);
    for i in 1..=a {
        at.add(&mut p, 4 * (b - a - 1 + 2 * i), a - i, Some(b - 1 + i));
    }
    p
}

/// P̂-matrix from the alternate sum forms, every entry computed independently.
pub fn generate_pmatrix_alt(g: &GroupSpec) -> Result<PMatrix> {
    let n = g.rank();
    let ni = n as i64;
    let entries = match g.family() {
        Family::S => {
            let at = Atoms::new(n, true);
            build_grid(g, |v, a, b| s_alt(v, &at, ni, a, b))
        }
        Family::A => {
            let at = Atoms::new(n, false);
            build_grid(g, |v, a, b| a_alt(v, &at, ni, a, b))
        }
        Family::B => {
            let at = Atoms::new(n, true);
            build_grid(g, |v, a, b| b_alt(v, &at, a, b))
        }
        Family::D => {
            let edge = Atoms::new(n, true);
            let block = Atoms::new(n, true).squaring_last();
            build_grid(g, |v, a, b| {
                d_edge(v, &edge, ni, a, b).unwrap_or_else(|| b_alt(v, &block, a, b))
            })
        }
        Family::I2 => {
            return Err(Error::Unsupported(
                "no alternate generating form for dihedral groups".into(),
            ))
        }
    };
    Ok(PMatrix::new(*g, "paper", entries))
}

/// λ-vector of the named active polynomial in the paper basis.
pub fn lambda_vector(g: &GroupSpec, which: ActiveName) -> Result<LambdaVector> {
    if !which.is_valid_for(g) {
        return Err(Error::Unsupported(format!(
            "active polynomial `{which}` is not defined for {g}"
        )));
    }
    let n = g.rank();
    let ni = n as i64;
    let vars = g.p_vars();
    let comp = |f: &dyn Fn(&mut Poly, i64)| -> Vec<Poly> {
        (1..=ni)
            .map(|a| {
                let mut p = Poly::zero(&vars);
                f(&mut p, a);
                p
            })
            .collect()
    };
    let components = match g.family() {
        Family::S => {
            let at = Atoms::new(n, true);
            comp(&|p, a| at.add(p, -(ni - a + 2) * (ni - a + 1), a - 2, None))
        }
        Family::A => {
            let at = Atoms::new(n, false);
            comp(&|p, a| {
                if a == 1 {
                    p.add_term(Monomial::one(n), q(2 * ni * (ni + 1)));
                } else {
                    at.add(p, -(ni + 1) * (ni - a + 2) * (ni - a + 1), a - 2, None);
                }
            })
        }
        Family::B => {
            let at = Atoms::new(n, true);
            comp(&|p, a| {
                let k = ni - a + 1;
                let c = match which {
                    ActiveName::Short | ActiveName::Pn => 4 * k,
                    ActiveName::Long => 4 * k * (k - 1),
                    _ => 4 * k * k,
                };
                at.add(p, c, a - 1, None);
            })
        }
        Family::D => {
            let at = Atoms::new(n, true);
            comp(&|p, a| {
                if a < ni {
                    at.add(p, 4 * (ni - a + 1) * (ni - a), a - 1, None);
                }
            })
        }
        Family::I2 => {
            let m = g.m().expect("dihedral");
            let mi = m as i64;
            let (first, second) = match which {
                ActiveName::Det => (4 * mi, Poly::zero(&vars)),
                ActiveName::APlus => (
                    2 * mi,
                    Poly::var(&vars, 0).pow(m / 2 - 1).scale_int(mi * mi),
                ),
                _ => (
                    2 * mi,
                    Poly::var(&vars, 0).pow(m / 2 - 1).scale_int(-mi * mi),
                ),
            };
            vec![Poly::integer(&vars, first), second]
        }
    };
    Ok(LambdaVector {
        group: *g,
        active: which,
        components,
    })
}

/// Hankel-structured building blocks over a fixed variable set `p_1..p_n`.
#[derive(Clone, Debug)]
pub struct HankelKit {
    vars: Arc<VarSet>,
}

impl HankelKit {
    pub fn new(vars: &Arc<VarSet>) -> Self {
        assert!(!vars.is_empty(), "rank at least 1");
        HankelKit { vars: vars.clone() }
    }

    pub fn n(&self) -> usize {
        self.vars.len()
    }

    pub fn vars(&self) -> &Arc<VarSet> {
        &self.vars
    }

    /// `p_k` with `p_0 = c0` and zero outside `0..=n`.
    fn p(&self, k: i64, c0: i64) -> Poly {
        if k == 0 {
            Poly::integer(&self.vars, c0)
        } else if k < 0 || k as usize > self.n() {
            Poly::zero(&self.vars)
        } else {
            Poly::var(&self.vars, k as usize - 1)
        }
    }

    /// Square Hankel matrix whose last row is `v`, zero above the anti-diagonal.
    pub fn hankel(&self, v: &[Poly]) -> PolyGrid {
        let k = v.len();
        (1..=k)
            .map(|i| {
                (1..=k)
                    .map(|j| {
                        if i + j > k {
                            v[i + j - k - 1].clone()
                        } else {
                            Poly::zero(&self.vars)
                        }
                    })
                    .collect()
            })
            .collect()
    }

    /// Places a `k x k` block in the upper-left corner of an `n x n` zero matrix.
    pub fn embed(&self, block: &PolyGrid) -> PolyGrid {
        let n = self.n();
        let mut out = matrix::zeros(n, n, &self.vars);
        for (i, row) in block.iter().enumerate() {
            for (j, e) in row.iter().enumerate() {
                out[i][j] = e.clone();
            }
        }
        out
    }

    /// `H_k(p)`, last row `v_a = (k-a+1) p_{a-1}` with `p_0 = 1`.
    pub fn h(&self, k: usize) -> PolyGrid {
        let ki = k as i64;
        let v: Vec<Poly> = (1..=ki)
            .map(|a| self.p(a - 1, 1).scale_int(ki - a + 1))
            .collect();
        self.hankel(&v)
    }

    pub fn h_embedded(&self, k: usize) -> PolyGrid {
        self.embed(&self.h(k))
    }

    /// `K_k(p)`, last row `u_a = (k-a+2) p_{a-2}` with `p_0 = p_{-1} = 0`.
    pub fn k(&self, k: usize) -> PolyGrid {
        let ki = k as i64;
        let v: Vec<Poly> = (1..=ki)
            .map(|a| self.p(a - 2, 0).scale_int(ki - a + 2))
            .collect();
        self.hankel(&v)
    }

    pub fn k_embedded(&self, k: usize) -> PolyGrid {
        self.embed(&self.k(k))
    }

    /// `Y_k`: ones on the anti-diagonal.
    pub fn y(&self, k: usize) -> PolyGrid {
        let mut v = vec![Poly::zero(&self.vars); k];
        v[0] = Poly::one(&self.vars);
        self.hankel(&v)
    }

    pub fn y_embedded(&self, k: usize) -> PolyGrid {
        self.embed(&self.y(k))
    }

    /// `R_ab = [(n+1) min(a,b) - ab] p_{a-1} p_{b-1}` with `p_0 = 0`.
    pub fn r(&self) -> PolyGrid {
        let n = self.n() as i64;
        (1..=n)
            .map(|a| {
                (1..=n)
                    .map(|b| {
                        (self.p(a - 1, 0) * self.p(b - 1, 0)).scale_int((n + 1) * a.min(b) - a * b)
                    })
                    .collect()
            })
            .collect()
    }

    /// `diag(1, ..., 1, 0)`.
    pub fn i_n(&self) -> PolyGrid {
        let n = self.n();
        let mut m = matrix::identity(n, &self.vars);
        m[n - 1][n - 1] = Poly::zero(&self.vars);
        m
    }

    /// `I - diag(1, ..., 1, 0)`.
    pub fn i_0(&self) -> PolyGrid {
        let n = self.n();
        let mut m = matrix::zeros(n, n, &self.vars);
        m[n - 1][n - 1] = Poly::one(&self.vars);
        m
    }

    /// `I^(n) H_n I^(n)`.
    pub fn h_t(&self) -> PolyGrid {
        let i = self.i_n();
        matrix::mul(&matrix::mul(&i, &self.h(self.n())), &i)
    }

    /// `H_n - H_t - p_{n-1} I_0`: the last row and column of `H_n` with zero diagonal.
    pub fn h_0(&self) -> PolyGrid {
        let n = self.n();
        let mut m = self.h(n);
        let t = self.h_t();
        let corner = self.p(n as i64 - 1, 1);
        let i0 = matrix::scale(&self.i_0(), &corner);
        for i in 0..n {
            for j in 0..n {
                m[i][j] = &(&m[i][j] - &t[i][j]) - &i0[i][j];
            }
        }
        m
    }
}

/// One summand `coeff * block` of a Hankel decomposition.
#[derive(Clone, Debug, PartialEq)]
pub struct HankelTerm {
    pub label: String,
    pub coeff: Poly,
    pub block: PolyGrid,
}

/// The summands whose total is the P̂-matrix (`A`, `B`, `D` only).
pub fn hankel_terms(g: &GroupSpec) -> Result<Vec<HankelTerm>> {
    let vars = g.p_vars();
    let kit = HankelKit::new(&vars);
    let n = g.rank();
    let pa = |a: usize| Poly::var(&vars, a - 1);
    let term = |label: String, coeff: Poly, block: PolyGrid| HankelTerm {
        label,
        coeff,
        block,
    };
    let mut out = Vec::new();
    match g.family() {
        Family::B => {
            for a in 1..=n {
                out.push(term(format!("H{a}"), pa(a).scale_int(4), kit.h_embedded(a)));
            }
        }
        Family::D => {
            for a in 1..n {
                out.push(term(format!("H{a}"), pa(a).scale_int(4), kit.h_embedded(a)));
            }
            let pn = pa(n);
            out.push(term("HT".into(), pn.pow(2).scale_int(4), kit.h_t()));
            out.push(term("H0".into(), pn.scale_int(2), kit.h_0()));
            out.push(term("I0".into(), pa(n - 1), kit.i_0()));
        }
        Family::A => {
            out.push(term("R".into(), Poly::one(&vars), kit.r()));
            for a in 1..=n {
                out.push(term(
                    format!("Y{a}"),
                    pa(a).scale_int(2 * (a as i64 + 1)),
                    kit.y_embedded(a),
                ));
                out.push(term(
                    format!("K{a}"),
                    pa(a).scale_int(-(n as i64 + 1)),
                    kit.k_embedded(a),
                ));
            }
        }
        _ => {
            return Err(Error::Unsupported(format!(
                "no Hankel decomposition is known for {g}"
            )))
        }
    }
    Ok(out)
}

/// P̂-matrix assembled from its Hankel decomposition.
pub fn pmatrix_from_hankel(g: &GroupSpec) -> Result<PMatrix> {
    let vars = g.p_vars();
    let n = g.rank();
    let mut acc = matrix::zeros(n, n, &vars);
    for t in hankel_terms(g)? {
        for (ra, rt) in acc.iter_mut().zip(&t.block) {
            for (a, e) in ra.iter_mut().zip(rt) {
                if !e.is_zero() {
                    *a = &*a + &(e * &t.coeff);
                }
            }
        }
    }
    Ok(PMatrix::new(*g, "paper", acc))
}

/// `det P̂` by fraction-free elimination, refusing ranks above `cap`.
pub fn discriminant(p: &PMatrix, cap: usize) -> Result<Poly> {
    if p.n() > cap {
        return Err(Error::CapExceeded {
            what: "symbolic determinant".into(),
            rank: p.n(),
            cap,
        });
    }
    Ok(matrix::det_bareiss(p.entries()))
}

/// The named active polynomial in the paper basis.
///
/// For `B_n`, `short` (alias `pn`) is `p_n` and `long` is `det / (4^n p_n)`;
/// for even dihedral groups `a_plus`/`a_minus` are `p1^(m/2) +- p2`.
pub fn active_polynomial(g: &GroupSpec, which: ActiveName, det_cap: usize) -> Result<Poly> {
    if !which.is_valid_for(g) {
        return Err(Error::Unsupported(format!(
            "active polynomial `{which}` is not defined for {g}"
        )));
    }
    let vars = g.p_vars();
    let n = g.rank();
    match which {
        ActiveName::Det => discriminant(&generate_pmatrix(g), det_cap),
        ActiveName::Short | ActiveName::Pn => Ok(Poly::var(&vars, n - 1)),
        ActiveName::Long => {
            let det = discriminant(&generate_pmatrix(g), det_cap)?;
            let c = Rational::from_integer(BigInt::one() << (2 * n));
            det.exact_divide(&Poly::var(&vars, n - 1).scale(&c))
        }
        ActiveName::APlus | ActiveName::AMinus => {
            let m = g.m().expect("dihedral");
            let p2 = Poly::var(&vars, 1);
            let head = Poly::var(&vars, 0).pow(m / 2);
            Ok(if which == ActiveName::APlus {
                head + p2
            } else {
                head - p2
            })
        }
    }
}

/// Number of terms of every entry.
pub fn term_count_matrix(p: &PMatrix) -> Vec<Vec<usize>> {
    p.entries()
        .iter()
        .map(|r| r.iter().map(Poly::term_count).collect())
        .collect()
}

pub fn count_grid_text(g: &[Vec<usize>]) -> String {
    let width = g
        .iter()
        .flatten()
        .map(|c| c.to_string().len())
        .max()
        .unwrap_or(1);
    let mut out = String::new();
    for row in g {
        let cells: Vec<String> = row.iter().map(|c| format!("{c:>width$}")).collect();
        out.push_str(&cells.join(" "));
        out.push('\n');
    }
    out
}

/// Whether every nonzero entry `(a,b)` has weight `d_a + d_b - 2`.
pub fn weight_law_holds(p: &PMatrix) -> bool {
    let d = p.vars().weights();
    p.entries().iter().enumerate().all(|(a, row)| {
        row.iter()
            .enumerate()
            .all(|(b, e)| e.is_zero() || e.weight_of().ok() == Some(d[a] + d[b] - 2))
    })
}

/// Whether every nonzero λ component `a` has weight `d_a - 2`.
pub fn lambda_weight_law_holds(l: &LambdaVector) -> bool {
    let d = l.vars().weights();
    l.components
        .iter()
        .enumerate()
        .all(|(a, c)| c.is_zero() || c.weight_of().ok() == Some(d[a] - 2))
}

/// `weight / 2` of a constant first λ component, if it is one.
pub fn lambda_first_constant(l: &LambdaVector) -> Option<Rational> {
    let c = &l.components[0];
    (c.is_constant() && !c.is_zero()).then(|| c.constant_term())
}

pub fn is_zero_grid(g: &PolyGrid) -> bool {
    g.iter().flatten().all(Poly::is_zero)
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    fn text(g: &GroupSpec) -> String {
        generate_pmatrix(g).to_text()
    }

    #[test]
    fn small_fixtures() {
        assert_eq!(text(&GroupSpec::s(2)), "[2, p1]\n[p1, p1^2 - 2*p2]\n");
        assert_eq!(text(&GroupSpec::b(2)), "[4*p1, 8*p2]\n[8*p2, 4*p1*p2]\n");
        assert_eq!(
            text(&GroupSpec::a(3)),
            "[4*p1, 6*p2, 8*p3]\n[6*p2, 4*p1^2 + 8*p3, 2*p1*p2]\n[8*p3, 2*p1*p2, -8*p1*p3 + 3*p2^2]\n"
        );
        assert_eq!(text(&GroupSpec::i2(5)), "[4*p1, 10*p2]\n[10*p2, 25*p1^4]\n");
        assert_eq!(text(&GroupSpec::d(2)), "[4*p1, 4*p2]\n[4*p2, p1]\n");
    }

    #[test]
    fn lambda_fixtures() {
        let l = lambda_vector(&GroupSpec::a(3), ActiveName::Det).unwrap();
        assert_eq!(l.to_text(), "(24, 0, -8*p1)\n");
        let l = lambda_vector(&GroupSpec::b(3), ActiveName::Short).unwrap();
        assert_eq!(l.to_text(), "(12, 8*p1, 4*p2)\n");
        let l = lambda_vector(&GroupSpec::s(3), ActiveName::Det).unwrap();
        assert_eq!(l.to_text(), "(0, -6, -2*p1)\n");
        let l = lambda_vector(&GroupSpec::i2(6), ActiveName::APlus).unwrap();
        assert_eq!(l.to_text(), "(12, 36*p1^2)\n");
        let l = lambda_vector(&GroupSpec::i2(6), ActiveName::AMinus).unwrap();
        assert_eq!(l.to_text(), "(12, -36*p1^2)\n");
        for n in 2..8 {
            let l = lambda_vector(&GroupSpec::d(n), ActiveName::Det).unwrap();
            assert!(l.components[n - 1].is_zero());
        }
        assert!(lambda_vector(&GroupSpec::d(4), ActiveName::Short).is_err());
        assert!(lambda_vector(&GroupSpec::i2(5), ActiveName::APlus).is_err());
    }

    #[test]
    fn b_short_plus_long_is_det() {
        for n in 2..=10 {
            let g = GroupSpec::b(n);
            let s = lambda_vector(&g, ActiveName::Short).unwrap();
            let l = lambda_vector(&g, ActiveName::Long).unwrap();
            let d = lambda_vector(&g, ActiveName::Det).unwrap();
            for a in 0..n {
                assert_eq!(&s.components[a] + &l.components[a], d.components[a]);
            }
        }
    }

    #[test]
    fn hankel_fixtures() {
        let kit = HankelKit::new(&GroupSpec::b(5).p_vars());
        let h = kit.h(5);
        let row: Vec<String> = h[4].iter().map(|p| p.to_string()).collect();
        assert_eq!(row, ["5", "4*p1", "3*p2", "2*p3", "p4"]);
        assert_eq!(kit.r()[1][1].to_string(), "8*p1^2");
        assert_eq!(kit.k(5)[4][2].to_string(), "4*p1");
        let y = kit.y_embedded(4);
        assert!(y[0][3].constant_term().is_one() && y[3][0].constant_term().is_one());
        assert!(y[4].iter().all(Poly::is_zero));
    }

    #[test]
    fn hankel_blocks_are_hankel() {
        for n in 1..=8 {
            let kit = HankelKit::new(&GroupSpec::b(n.max(2)).p_vars());
            for m in [kit.h(kit.n()), kit.k(kit.n()), kit.y(kit.n())] {
                let k = m.len();
                for i in 1..k {
                    for j in 0..k - 1 {
                        assert_eq!(m[i][j], m[i - 1][j + 1]);
                    }
                }
                for i in 0..k {
                    for j in 0..k {
                        if i + j + 2 <= k {
                            assert!(m[i][j].is_zero());
                        }
                    }
                }
            }
            assert!((0..kit.n()).all(|i| kit.h_0()[i][i].is_zero()));
        }
    }

    #[test]
    fn determinant_fixtures() {
        let d = discriminant(&generate_pmatrix(&GroupSpec::b(2)), 6).unwrap();
        assert_eq!(d.to_string(), "16*p1^2*p2 - 64*p2^2");
        for m in 2..=10u32 {
            let d = discriminant(&generate_pmatrix(&GroupSpec::i2(m)), 6).unwrap();
            let v = GroupSpec::i2(m).p_vars();
            let c = 4 * (m as i64) * (m as i64);
            let expect = (Poly::var(&v, 0).pow(m) - Poly::var(&v, 1).pow(2)).scale_int(c);
            assert_eq!(d, expect);
        }
        assert!(matches!(
            discriminant(&generate_pmatrix(&GroupSpec::b(7)), 6),
            Err(Error::CapExceeded { .. })
        ));
    }

    #[test]
    fn b_discriminant_factors() {
        for n in 2..=4 {
            let g = GroupSpec::b(n);
            let l = active_polynomial(&g, ActiveName::Long, 6).unwrap();
            assert!(l.is_integral(), "B{n}");
            assert_eq!(l.weight_of().unwrap() as usize, 2 * n * (n - 1));
        }
        let l = active_polynomial(&GroupSpec::b(2), ActiveName::Long, 6).unwrap();
        assert_eq!(l.to_string(), "p1^2 - 4*p2");
    }

    #[test]
    fn term_count_fixture() {
        let t = term_count_matrix(&generate_pmatrix(&GroupSpec::a(3)));
        assert_eq!(t, vec![vec![1, 1, 1], vec![1, 2, 1], vec![1, 1, 2]]);
        let b8 = term_count_matrix(&generate_pmatrix(&GroupSpec::b(8)));
        assert_eq!(b8[3], vec![1, 2, 3, 4, 4, 3, 2, 1]);
        assert_eq!(
            count_grid_text(&[vec![1, 10], vec![10, 146]]),
            "  1  10\n 10 146\n"
        );
    }

    #[test]
    fn json_round_trip() {
        for g in [GroupSpec::a(3), GroupSpec::d(4), GroupSpec::i2(7)] {
            let p = generate_pmatrix(&g);
            let back: PMatrix = serde_json::from_str(&serde_json::to_string(&p).unwrap()).unwrap();
            assert_eq!(back, p);
            let l = lambda_vector(&g, ActiveName::Det).unwrap();
            let back: LambdaVector =
                serde_json::from_str(&serde_json::to_string(&l).unwrap()).unwrap();
            assert_eq!(back, l);
        }
    }

    #[test]
    fn latex_form() {
        let s = generate_pmatrix(&GroupSpec::b(2)).to_latex();
        assert_eq!(
            s,
            "\\begin{pmatrix}\n4 p_{1} & 8 p_{2} \\\\\n8 p_{2} & 4 p_{1} p_{2}\n\\end{pmatrix}\n"
        );
    }

    #[test]
    fn highest_weight_variable_enters_linearly() {
        for n in 2..=8 {
            let vars = GroupSpec::b(n).p_vars();
            let kit = HankelKit::new(&vars);
            let b = generate_pmatrix(&GroupSpec::b(n));
            let four = Poly::integer(&vars, 4);
            assert_eq!(b.differentiate(n - 1), matrix::scale(&kit.h(n), &four));

            let a = generate_pmatrix(&GroupSpec::a(n));
            let va = GroupSpec::a(n).p_vars();
            let ka = HankelKit::new(&va);
            let n1 = n as i64 + 1;
            let y = matrix::scale(&ka.y(n), &Poly::integer(&va, 2 * n1));
            let k = matrix::scale(&ka.k(n), &Poly::integer(&va, -n1));
            assert_eq!(a.differentiate(n - 1), matrix::add(&y, &k));

            if n >= 3 {
                let g = GroupSpec::d(n);
                let vd = g.p_vars();
                let kd = HankelKit::new(&vd);
                let d = generate_pmatrix(&g);
                let h = matrix::scale(&kd.h_embedded(n - 1), &Poly::integer(&vd, 4));
                assert_eq!(d.differentiate(n - 2), matrix::add(&h, &kd.i_0()));
            }
        }
    }

    fn family_groups(max: usize) -> Vec<GroupSpec> {
        let mut v = Vec::new();
        for n in 1..=max {
            v.push(GroupSpec::s(n));
            v.push(GroupSpec::a(n));
            if n >= 2 {
                v.push(GroupSpec::b(n));
                v.push(GroupSpec::d(n));
                v.push(GroupSpec::i2(n as u32));
            }
        }
        v
    }

    #[test]
    fn structure_laws() {
        for g in family_groups(12) {
            let p = generate_pmatrix(&g);
            assert!(p.is_symmetric(), "{g}");
            assert!(weight_law_holds(&p), "{g}");
            let l = lambda_vector(&g, ActiveName::Det).unwrap();
            assert!(lambda_weight_law_holds(&l), "{g}");
        }
    }

    #[test]
    fn generating_forms_agree() {
        for n in 1..=12 {
            let mut gs = vec![GroupSpec::a(n)];
            if n >= 2 {
                gs.push(GroupSpec::b(n));
                gs.push(GroupSpec::d(n));
            }
            for g in &gs {
                let p = generate_pmatrix(g);
                assert_eq!(pmatrix_from_hankel(g).unwrap(), p, "{g} hankel");
                if n <= 10 {
                    assert_eq!(generate_pmatrix_alt(g).unwrap(), p, "{g} alt");
                }
            }
            if n <= 10 {
                let s = GroupSpec::s(n);
                assert_eq!(
                    generate_pmatrix_alt(&s).unwrap(),
                    generate_pmatrix(&s),
                    "{s}"
                );
            }
        }
        assert!(pmatrix_from_hankel(&GroupSpec::s(3)).is_err());
        assert!(generate_pmatrix_alt(&GroupSpec::i2(3)).is_err());
    }

    proptest! {
        #[test]
        fn euler_first_row(n in 2usize..=10, fam in 0usize..4) {
            let g = match fam {
                0 => GroupSpec::a(n),
                1 => GroupSpec::b(n),
                2 => GroupSpec::d(n),
                _ => GroupSpec::i2(n as u32 + 1),
            };
            let p = generate_pmatrix(&g);
            let d = g.degrees();
            for a in 0..g.rank() {
                let expect = Poly::var(p.vars(), a).scale_int(2 * d[a] as i64);
                prop_assert_eq!(&p.entries()[0][a], &expect);
            }
            let l = lambda_vector(&g, ActiveName::Det).unwrap();
            let w = discriminant_weight(&g);
            prop_assert_eq!(lambda_first_constant(&l), Some(q(2 * w as i64)));
        }

        #[test]
        fn s_first_row(n in 1usize..=10) {
            let g = GroupSpec::s(n);
            let p = generate_pmatrix(&g);
            for b in 1..=n {
                let c = (n - b + 1) as i64;
                let expect = if b == 1 {
                    Poly::integer(p.vars(), c)
                } else {
                    Poly::var(p.vars(), b - 2).scale_int(c)
                };
                prop_assert_eq!(p.entry(1, b), &expect);
            }
        }
    }

    fn discriminant_weight(g: &GroupSpec) -> usize {
        2 * g.reflection_count()
    }
}
