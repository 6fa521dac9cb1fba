//! Output in the three supported formats.

use clap::ValueEnum;
use serde::Serialize;

use pmat_core::invariants::{basic_invariants, BasicInvariants, GroupSpec, RootSet};
use pmat_core::oracle::VerificationReport;
use pmat_core::pmatrix::{
    count_grid_text, generate_pmatrix, grid_latex, grid_text, lambda_vector, ActiveName,
    HankelTerm, LambdaVector, PMatrix,
};
use pmat_core::polyring::matrix::PolyGrid;
use pmat_core::polyring::{rational_text, NumericPoly, Poly, PolyJson};
use pmat_core::transform::{push_lambda, push_pmatrix, BasisTransform};

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum Format {
    Json,
    Text,
    Latex,
}

/// What `transform` prints: the map and the objects pushed through it.
#[derive(Serialize)]
pub struct TransformOutput {
    pub transform: BasisTransform,
    pub pmatrix: PMatrix,
    pub lambda: LambdaVector,
}

impl TransformOutput {
    pub fn new(t: &BasisTransform) -> pmat_core::Result<Self> {
        let p = generate_pmatrix(&t.group);
        let l = lambda_vector(&t.group, ActiveName::Det)?;
        Ok(TransformOutput {
            transform: t.clone(),
            pmatrix: push_pmatrix(&p, t)?,
            lambda: push_lambda(&l, t)?,
        })
    }
}

#[derive(Serialize)]
pub struct Counts {
    pub group: GroupSpec,
    pub basis: String,
    pub counts: Vec<Vec<usize>>,
}

pub enum Rendered {
    PMatrix(PMatrix),
    Lambda(LambdaVector),
    Poly {
        group: GroupSpec,
        name: &'static str,
        poly: Poly,
    },
    Hankel {
        group: GroupSpec,
        terms: Vec<HankelTerm>,
    },
    Invariants(GroupSpec),
    Degrees(GroupSpec),
    Roots(RootSet, GroupSpec),
    Transform(TransformOutput),
    Report(VerificationReport),
    Counts(Counts),
}

fn json<T: Serialize>(v: &T) -> String {
    let mut s = serde_json::to_string_pretty(v).expect("serializable");
    s.push('\n');
    s
}

fn grid_json(g: &PolyGrid) -> Vec<Vec<PolyJson>> {
    g.iter()
        .map(|r| r.iter().map(PolyJson::from).collect())
        .collect()
}

fn numeric_text(p: &NumericPoly<f64>) -> String {
    let vars = p.vars();
    let mut terms: Vec<_> = p.terms().collect();
    terms.sort_by(|a, b| b.0.cmp(a.0));
    let mut out = String::new();
    for (i, (m, c)) in terms.iter().enumerate() {
        let c = **c;
        let factors: Vec<String> = m
            .exps()
            .iter()
            .enumerate()
            .filter(|(_, &e)| e > 0)
            .map(|(k, &e)| {
                if e == 1 {
                    vars.name(k).to_string()
                } else {
                    format!("{}^{e}", vars.name(k))
                }
            })
            .collect();
        let sign = if c < 0.0 { "-" } else { "+" };
        if i == 0 {
            if c < 0.0 {
                out.push('-');
            }
        } else {
            out.push_str(&format!(" {sign} "));
        }
        let mag = c.abs();
        if factors.is_empty() {
            out.push_str(&format!("{mag:?}"));
        } else if mag == 1.0 {
            out.push_str(&factors.join("*"));
        } else {
            out.push_str(&format!("{mag:?}*{}", factors.join("*")));
        }
    }
    if out.is_empty() {
        out.push('0');
    }
    out
}

#[derive(Serialize)]
struct NumericTermJson {
    coeff: f64,
    exps: Vec<u32>,
}

fn numeric_json(p: &NumericPoly<f64>) -> Vec<NumericTermJson> {
    let mut terms: Vec<_> = p.terms().collect();
    terms.sort_by(|a, b| b.0.cmp(a.0));
    terms
        .into_iter()
        .map(|(m, c)| NumericTermJson {
            coeff: *c,
            exps: m.exps().to_vec(),
        })
        .collect()
}

impl Rendered {
    pub fn render(&self, f: Format) -> String {
        match self {
            Rendered::PMatrix(p) => match f {
                Format::Json => json(p),
                Format::Text => p.to_text(),
                Format::Latex => p.to_latex(),
            },
            Rendered::Lambda(l) => match f {
                Format::Json => json(l),
                Format::Text => l.to_text(),
                Format::Latex => l.to_latex(),
            },
            Rendered::Poly { group, name, poly } => match f {
                Format::Json => {
                    #[derive(Serialize)]
                    struct J<'a> {
                        group: GroupSpec,
                        name: &'a str,
                        poly: PolyJson,
                    }
                    json(&J {
                        group: *group,
                        name,
                        poly: PolyJson::from(poly),
                    })
                }
                Format::Text => format!("{poly}\n"),
                Format::Latex => format!("{}\n", poly.to_latex()),
            },
            Rendered::Hankel { group, terms } => match f {
                Format::Json => {
                    #[derive(Serialize)]
                    struct T<'a> {
                        label: &'a str,
                        coeff: PolyJson,
                        block: Vec<Vec<PolyJson>>,
                    }
                    #[derive(Serialize)]
                    struct J<'a> {
                        group: GroupSpec,
                        terms: Vec<T<'a>>,
                    }
                    json(&J {
                        group: *group,
                        terms: terms
                            .iter()
                            .map(|t| T {
                                label: &t.label,
                                coeff: PolyJson::from(&t.coeff),
                                block: grid_json(&t.block),
                            })
                            .collect(),
                    })
                }
                Format::Text => terms
                    .iter()
                    .map(|t| format!("{}: {}\n{}", t.label, t.coeff, grid_text(&t.block)))
                    .collect::<Vec<_>>()
                    .join("\n"),
                Format::Latex => {
                    let parts: Vec<String> = terms
                        .iter()
                        .map(|t| {
                            format!(
                                "\\left({}\\right) {}",
                                t.coeff.to_latex(),
                                grid_latex(&t.block).trim_end()
                            )
                        })
                        .collect();
                    format!("{}\n", parts.join("\n+ "))
                }
            },
            Rendered::Invariants(g) => render_invariants(g, f),
            Rendered::Degrees(g) => {
                let d = g.degrees();
                match f {
                    Format::Json => {
                        #[derive(Serialize)]
                        struct J {
                            group: GroupSpec,
                            degrees: Vec<u32>,
                            order: String,
                            reflections: usize,
                            notes: Vec<String>,
                        }
                        json(&J {
                            group: *g,
                            degrees: d,
                            order: g.order().to_string(),
                            reflections: g.reflection_count(),
                            notes: g.notes(),
                        })
                    }
                    Format::Text => {
                        let ds: Vec<String> = d.iter().map(u32::to_string).collect();
                        format!(
                            "degrees: {}\norder: {}\nreflections: {}\n",
                            ds.join(" "),
                            g.order(),
                            g.reflection_count()
                        )
                    }
                    Format::Latex => {
                        let ds: Vec<String> = d.iter().map(u32::to_string).collect();
                        format!("d = ({}), \\quad |W| = {}\n", ds.join(", "), g.order())
                    }
                }
            }
            Rendered::Roots(set, g) => render_roots(set, g, f),
            Rendered::Transform(t) => match f {
                Format::Json => json(t),
                Format::Text => format!(
                    "basis: {}\n{}\npmatrix:\n{}\nlambda:\n{}",
                    t.transform.basis,
                    t.transform.to_text(),
                    t.pmatrix.to_text(),
                    t.lambda.to_text()
                ),
                Format::Latex => format!(
                    "{}\n{}\n{}",
                    t.transform.to_latex(),
                    t.pmatrix.to_latex(),
                    t.lambda.to_latex()
                ),
            },
            Rendered::Report(r) => match f {
                Format::Json => json(r),
                Format::Text => r.to_text(),
                Format::Latex => {
                    let rows: Vec<String> = r
                        .checks
                        .iter()
                        .map(|c| format!("{} & {} & {} \\\\", c.name, c.status, c.residual))
                        .collect();
                    format!(
                        "\\begin{{tabular}}{{lll}}\n{}\n\\end{{tabular}}\n",
                        rows.join("\n")
                    )
                }
            },
            Rendered::Counts(c) => match f {
                Format::Json => json(c),
                Format::Text => count_grid_text(&c.counts),
                Format::Latex => {
                    let rows: Vec<String> = c
                        .counts
                        .iter()
                        .map(|r| {
                            r.iter()
                                .map(usize::to_string)
                                .collect::<Vec<_>>()
                                .join(" & ")
                        })
                        .collect();
                    format!(
                        "\\begin{{pmatrix}}\n{}\n\\end{{pmatrix}}\n",
                        rows.join(" \\\\\n")
                    )
                }
            },
        }
    }
}

fn render_invariants(g: &GroupSpec, f: Format) -> String {
    match basic_invariants(g) {
        BasicInvariants::Exact(ps) => match f {
            Format::Json => {
                #[derive(Serialize)]
                struct J {
                    group: GroupSpec,
                    exact: bool,
                    invariants: Vec<PolyJson>,
                }
                json(&J {
                    group: *g,
                    exact: true,
                    invariants: ps.iter().map(PolyJson::from).collect(),
                })
            }
            Format::Text => ps
                .iter()
                .enumerate()
                .map(|(a, p)| format!("p{} = {p}\n", a + 1))
                .collect(),
            Format::Latex => ps
                .iter()
                .enumerate()
                .map(|(a, p)| format!("p_{{{}}} = {}\n", a + 1, p.to_latex()))
                .collect(),
        },
        BasicInvariants::Numeric(ps) => match f {
            Format::Json => {
                #[derive(Serialize)]
                struct J {
                    group: GroupSpec,
                    exact: bool,
                    invariants: Vec<Vec<NumericTermJson>>,
                }
                json(&J {
                    group: *g,
                    exact: false,
                    invariants: ps.iter().map(numeric_json).collect(),
                })
            }
            Format::Text | Format::Latex => ps
                .iter()
                .enumerate()
                .map(|(a, p)| format!("p{} = {}\n", a + 1, numeric_text(p)))
                .collect(),
        },
    }
}

fn render_roots(set: &RootSet, g: &GroupSpec, f: Format) -> String {
    let cells: Vec<Vec<String>> = set
        .roots
        .iter()
        .map(|r| match r.as_exact() {
            Some(v) => v.iter().map(rational_text).collect(),
            None => r.as_f64().iter().map(|c| format!("{c:?}")).collect(),
        })
        .collect();
    match f {
        Format::Json => {
            #[derive(Serialize)]
            struct J {
                group: GroupSpec,
                subset: pmat_core::invariants::RootSubset,
                ambient: usize,
                roots: Vec<Vec<String>>,
            }
            json(&J {
                group: *g,
                subset: set.subset,
                ambient: set.ambient,
                roots: cells,
            })
        }
        Format::Text => cells
            .iter()
            .map(|r| format!("({})\n", r.join(", ")))
            .collect(),
        Format::Latex => cells
            .iter()
            .map(|r| format!("\\begin{{pmatrix}} {} \\end{{pmatrix}}\n", r.join(" & ")))
            .collect(),
    }
}
