use pmat_core::invariants::{GroupSpec, RootSubset};
use pmat_core::oracle::{self, Depth, VerifyOptions};
use pmat_core::pmatrix::{
    generate_pmatrix, generate_pmatrix_alt, lambda_vector, pmatrix_from_hankel, ActiveName,
};
use pmat_core::transform::{
    is_abasis_lambda, is_flat, push_lambda, push_pmatrix, solve_abasis, solve_flat,
};

fn group(s: &str) -> GroupSpec {
    s.parse().unwrap()
}

#[test]
fn generated_matrices_match_gradient_definition() {
    for s in ["S4", "B4", "D4", "I2(5)", "I2(8)"] {
        let g = group(s);
        let def = oracle::pmatrix_from_definition(&g).unwrap();
        assert_eq!(def.entries(), generate_pmatrix(&g).entries(), "{s}");
    }
}

#[test]
fn three_constructions_agree() {
    for s in ["A4", "B5", "D5"] {
        let g = group(s);
        let p = generate_pmatrix(&g);
        assert_eq!(pmatrix_from_hankel(&g).unwrap().entries(), p.entries(), "{s}");
        assert_eq!(generate_pmatrix_alt(&g).unwrap().entries(), p.entries(), "{s}");
    }
}

#[test]
fn lambda_matches_root_products() {
    for s in ["B3", "D4", "I2(6)"] {
        let g = group(s);
        let subsets: &[RootSubset] = match g.family() {
            pmat_core::invariants::Family::D => &[RootSubset::All],
            _ => &[RootSubset::All, RootSubset::Short, RootSubset::Long],
        };
        for &sub in subsets {
            let from_roots = oracle::lambda_from_roots(&g, sub).unwrap();
            let closed = lambda_vector(&g, oracle::active_for(&g, sub)).unwrap();
            assert_eq!(from_roots.components, closed.components, "{s} {sub:?}");
        }
    }
}

#[test]
fn distinguished_bases_meet_their_conditions() {
    let g = group("B4");
    let flat = solve_flat(&g).unwrap();
    assert!(is_flat(&push_pmatrix(&generate_pmatrix(&g), &flat).unwrap()));

    let a = solve_abasis(&g, ActiveName::Det).unwrap();
    let l = push_lambda(&lambda_vector(&g, ActiveName::Det).unwrap(), &a).unwrap();
    assert!(is_abasis_lambda(&l, 2 * g.reflection_count() as u32));
}

#[test]
fn full_verification_passes() {
    for s in ["B3", "D4", "I2(7)", "A3"] {
        let opts = VerifyOptions {
            depth: Depth::Full,
            ..VerifyOptions::default()
        };
        let r = oracle::verify_group(&group(s), &opts);
        assert!(r.passed(), "{s}: {}", r.to_text());
    }
}
