//! Writes the golden documents under `fixtures/` (or the directory given as
//! the first argument). Every file is in canonical form.

use std::path::PathBuf;

use homcolor::cochains::{cochain_from_fn, GradedCochain};
use homcolor::derivations::left_mult;
use homcolor::extensions::{build_extension, ExtensionData};
use homcolor::io::{self, AlgebraDocument, AlgebraRef, ExtensionDocument, SequenceDocument};
use homcolor::scalar::q;
use homcolor::testkit::fixtures;
use homcolor::{GradedVector, Matrix};

fn path_ref(name: &str) -> AlgebraRef {
    AlgebraRef::Path(format!("{name}.alg"))
}

fn main() -> std::io::Result<()> {
    let dir = std::env::args().nth(1).map(PathBuf::from).unwrap_or_else(|| {
        PathBuf::from(env!("CARGO_MANIFEST_DIR")).join("fixtures")
    });
    std::fs::create_dir_all(&dir)?;
    let write = |name: &str, text: String| std::fs::write(dir.join(name), text);

    for (name, a) in fixtures::corpus() {
        let mut doc = AlgebraDocument::new(a);
        doc.metadata.insert("name".into(), name.clone().into());
        write(&format!("{name}.alg"), io::serialize_algebra_document(&doc))?;
    }

    write("heisenberg_beta.mat", io::serialize_matrix(&fixtures::twist_morphism("heisenberg").unwrap()))?;
    write("sl2_chevalley.mat", io::serialize_matrix(&fixtures::chevalley_involution()))?;
    write("plane_b.mat", io::serialize_matrix(&Matrix::from_rows(vec![vec![q(2), q(-1)]])))?;

    // Central extension of the plane by the line: rho(e1, e2) = e1.
    let g = fixtures::abelian(2);
    let h = fixtures::abelian(1);
    let mut rho = GradedCochain::zero(2, g.group().zero(), 1);
    rho.set(vec![0, 1], GradedVector::basis(0));
    let plane = ExtensionData::new(g.clone(), h.clone(), 1, vec![Matrix::zeros(1, 1); 2], rho).unwrap();
    let mut doc = ExtensionDocument::inline(plane.clone());
    doc.g = path_ref("abelian2");
    doc.h = path_ref("abelian1");
    write("plane_central.ext", io::serialize_extension(&doc))?;

    let split = ExtensionData::zero(&g, &h, 1);
    let mut doc = ExtensionDocument::inline(split);
    doc.g = path_ref("abelian2");
    doc.h = path_ref("abelian1");
    write("plane_split.ext", io::serialize_extension(&doc))?;

    // sl(2) acting on itself.
    let s = fixtures::sl2();
    let phi: Vec<Matrix> = (0..3).map(|x| left_mult(&s, &GradedVector::basis(x), 0).unwrap()).collect();
    let adj = ExtensionData::new(s.clone(), s.clone(), 1, phi, GradedCochain::zero(2, s.group().zero(), 3)).unwrap();
    let mut doc = ExtensionDocument::inline(adj);
    doc.g = path_ref("sl2");
    doc.h = path_ref("sl2");
    write("sl2_adjoint.ext", io::serialize_extension(&doc))?;

    // Odd square: rho(f, f) = u on the abelian 1|1 superalgebra, valued in the even line.
    let sg = fixtures::super_abelian(1, 1);
    let sh = fixtures::super_abelian(1, 0);
    let srho = cochain_from_fn(&sg, 2, sg.group().zero(), 1, |t| {
        if t == [1, 1] {
            GradedVector::basis(0)
        } else {
            GradedVector::new()
        }
    });
    let sup = ExtensionData::new(sg, sh, 1, vec![Matrix::zeros(1, 1); 2], srho).unwrap();
    write("super_odd_square.ext", io::serialize_extension(&ExtensionDocument::inline(sup)))?;

    // Twisted central datum over the Yau twist of the Heisenberg algebra.
    let ht = fixtures::heisenberg().yau_twist(&fixtures::twist_morphism("heisenberg").unwrap()).unwrap();
    let line = homcolor::ColorHomLieAlgebra::abelian(
        ht.eps().clone(),
        vec![homcolor::BasisElement::new("u", ht.group().zero())],
        Matrix::diagonal(&[q(12)]),
    )
    .unwrap();
    let trho = cochain_from_fn(&ht, 2, ht.group().zero(), 1, |t| {
        if t == [0, 2] {
            GradedVector::basis(0)
        } else {
            GradedVector::new()
        }
    });
    let twisted = ExtensionData::new(ht, line, 1, vec![Matrix::zeros(1, 1); 3], trho).unwrap();
    write("heisenberg_twisted_central.ext", io::serialize_extension(&ExtensionDocument::inline(twisted)))?;

    let seq = build_extension(&plane).unwrap();
    let mut sdoc = SequenceDocument::inline(seq);
    sdoc.h = path_ref("abelian1");
    sdoc.g = path_ref("abelian2");
    write("plane_heisenberg.seq", io::serialize_sequence(&sdoc))?;

    let mut psi = GradedCochain::zero(2, s.group().zero(), 1);
    psi.set(vec![1, 2], GradedVector::basis(0));
    let mut v = io::cochain_to_value(&psi);
    let obj = v.as_object_mut().unwrap();
    obj.insert("format_version".into(), io::FORMAT_VERSION.into());
    obj.insert("algebra".into(), "sl2.alg".into());
    write("sl2_ef.coch", io::to_canonical_string(&v))?;

    println!("wrote golden corpus to {}", dir.display());
    Ok(())
}
