//! Regenerates the input documents under `tests/fixtures`.
//!
//! `cargo run -p pcoho-cli --example write_fixtures -- crates/cli/tests/fixtures`

use std::collections::BTreeMap;
use std::path::PathBuf;

use pcoho_core::algebra::{adjoint_rep, Bilinear};
use pcoho_core::catalog;
use pcoho_core::cochain::TwoCochain;
use pcoho_core::deformation::{coboundary_of_element, FormalDeformation};
use pcoho_core::extension::{build_split_extension, build_twisted_extension, compat_pair_aut, AutPair};
use pcoho_core::io::{serialize, Document, Payload};
use pcoho_core::matrix::{int, unit};
use pcoho_core::operators::OperatorSpec;
use pcoho_core::prototwilled::{direct_product, modified_semidirect, ActionData, ProtoTwilled};
use pcoho_core::{Matrix, PoissonAlgebra, Representation};

fn maps(entries: &[(&str, Matrix)]) -> Payload {
    Payload::Map(entries.iter().map(|(k, m)| (k.to_string(), m.clone())).collect::<BTreeMap<_, _>>())
}

fn main() {
    let dir = PathBuf::from(std::env::args().nth(1).unwrap_or_else(|| "crates/cli/tests/fixtures".into()));
    std::fs::create_dir_all(&dir).expect("create fixture directory");
    let write = |name: &str, payload: Payload| {
        std::fs::write(dir.join(name), serialize(&Document::new(payload))).expect("write fixture");
    };
    let m = Matrix::from_i64;

    let a2 = PoissonAlgebra::abelian(2);
    write("sl2zero.json", Payload::Algebra(catalog::sl2_zero()));
    write("a2.json", Payload::Algebra(a2.clone()));
    write("trivial.json", Payload::Representation(Representation::trivial(&a2, 1)));
    // span{1, x} with x·x = 0 and bracket {x, 1} = x: Leibniz fails.
    let bad = PoissonAlgebra::unchecked(
        catalog::dual_numbers().mult().clone(),
        Bilinear::from_entries(2, &[(1, 0, 1, int(1)), (0, 1, 1, int(-1))]),
    )
    .unwrap();
    write("not_poisson.json", Payload::Algebra(bad));

    let lie2 = catalog::lie2();
    let adj = adjoint_rep(&lie2);
    write("lie2.json", Payload::Algebra(lie2.clone()));
    write("lie2_adjoint.json", Payload::Representation(adj.clone()));
    let (split, _) = build_split_extension(&lie2, &adj).unwrap();
    write("split.json", Payload::Extension(split.clone()));
    let compatible = AutPair { beta: Matrix::identity(2), alpha: Matrix::identity(2) };
    let incompatible = AutPair { beta: Matrix::identity(2), alpha: m(&[&[1, 0], &[0, 2]]) };
    assert!(compat_pair_aut(&split, &compatible).unwrap());
    assert!(!compat_pair_aut(&split, &incompatible).unwrap());
    write("compatible.json", maps(&[("beta", compatible.beta), ("alpha", compatible.alpha)]));
    write("incompatible.json", maps(&[("beta", incompatible.beta), ("alpha", incompatible.alpha)]));
    write("der_zero.json", maps(&[("dV", Matrix::zeros(2, 2)), ("dP", Matrix::zeros(2, 2))]));

    let h = Bilinear::from_vec(2, 2, 1, vec![int(1), int(2), int(2), int(0)]).unwrap();
    let hh = Bilinear::from_vec(2, 2, 1, vec![int(0), int(3), int(-3), int(0)]).unwrap();
    let pair = TwoCochain::new(h, hh).unwrap();
    write("a2_pair.json", Payload::CochainPair(pair.clone()));
    let (twisted, _) = build_twisted_extension(&a2, &Representation::trivial(&a2, 1), &pair).unwrap();
    write("twisted.json", Payload::Extension(twisted));
    write("scale_module.json", maps(&[("beta", m(&[&[2]])), ("alpha", Matrix::identity(2))]));

    let fix_b = catalog::fix_b();
    write("rb1_fixb.json", Payload::OperatorSpec(OperatorSpec::RbWeight1(ActionData::adjoint(&fix_b))));
    write("r_minus1.json", maps(&[("r", m(&[&[-1]]))]));
    write("r_one.json", maps(&[("r", m(&[&[1]]))]));
    write("modified_fixb.json", Payload::ProtoTwilled(modified_semidirect(&fix_b).unwrap().maps().clone()));

    let heis = catalog::heisenberg();
    let pt = direct_product(&heis, &heis).unwrap();
    write("heis_pair.json", Payload::ProtoTwilled(pt.maps().clone()));
    let r = Matrix::identity(3);
    write("id3.json", maps(&[("r", r.clone())]));
    let r1 = coboundary_of_element(&pt, &r, &unit(3, 0)).unwrap();
    write("heis_r1.json", maps(&[("r1", r1.clone())]));
    write("heis_linear.json", Payload::Deformation(FormalDeformation::linear(r.clone(), r1).unwrap()));
    write("heis_constant.json", Payload::Deformation(FormalDeformation::linear(r, Matrix::zeros(3, 3)).unwrap()));

    let a = catalog::dual_numbers();
    let ptc = ProtoTwilled::from_total(a, 1).unwrap();
    write("dual_split.json", Payload::ProtoTwilled(ptc.maps().clone()));
    write("order1_zero.json", Payload::Algebra(PoissonAlgebra::abelian(2)));
    let f = Bilinear::from_entries(2, &[(1, 0, 1, int(1))]);
    write("order1_bad.json", Payload::Algebra(PoissonAlgebra::unchecked(f, Bilinear::zero(2, 2, 2)).unwrap()));
}
