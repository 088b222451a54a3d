use proptest::prelude::*;

use superlie::document::{builtin, AlgebraDocument, Document, ModuleDocument, SCRAMBLED_LAMBDAS};
use superlie::osp12::{decompose, irreducible_module, osp12_standard};

#[test]
fn algebra_documents_round_trip() {
    for name in ["osp12", "sl12"] {
        let doc = builtin(name).unwrap();
        let back = Document::parse(&doc.to_json()).unwrap();
        assert_eq!(back, doc);
        let Document::Algebra(d) = back else { panic!("{name} is an algebra") };
        let l = d.to_algebra().unwrap();
        assert_eq!(AlgebraDocument::from_algebra(&l), d);
    }
    let Document::Algebra(d) = builtin("osp12").unwrap() else { unreachable!() };
    assert_eq!(d.to_algebra().unwrap(), osp12_standard());
}

#[test]
fn cartan_without_weights_is_inferred() {
    let Document::Algebra(mut d) = builtin("osp12").unwrap() else { unreachable!() };
    d.weights = None;
    assert_eq!(d.to_algebra().unwrap().weights(), osp12_standard().weights());
}

#[test]
fn bad_documents_are_rejected() {
    assert!(Document::parse("{}").is_err());
    assert!(Document::parse(r#"{"kind":"module","version":2,"parities":[],"e":[],"f":[],"h":[]}"#).unwrap().into_module().is_err());
    let bad = r#"{"kind":"algebra","version":1,"labels":["a"],"parities":[0],"structure":[[0,0,3,"1"]]}"#;
    let Document::Algebra(d) = Document::parse(bad).unwrap() else { unreachable!() };
    assert!(d.to_algebra().is_err());
    let extra = r#"{"kind":"algebra","version":1,"labels":[],"parities":[],"structure":[],"bogus":1}"#;
    assert!(Document::parse(extra).is_err());
    assert!(builtin("W3").is_err());
}

#[test]
fn module_fixtures() {
    let Document::Module(d) = builtin("V2plusV0").unwrap() else { unreachable!() };
    assert_eq!(decompose(&d.to_module().unwrap()).unwrap().lambdas(), vec![2, 0]);
    let Document::Module(d) = builtin("scrambled").unwrap() else { unreachable!() };
    assert_eq!(decompose(&d.to_module().unwrap()).unwrap().lambdas(), SCRAMBLED_LAMBDAS.to_vec());
}

trait IntoModule {
    fn into_module(self) -> superlie::Result<superlie::osp12::Osp12Module>;
}

impl IntoModule for Document {
    fn into_module(self) -> superlie::Result<superlie::osp12::Osp12Module> {
        match self {
            Document::Module(m) => m.to_module(),
            Document::Algebra(_) => Err(superlie::Error::Parse("not a module".into())),
        }
    }
}

proptest! {
    #[test]
    fn module_documents_round_trip(half in 0i64..6, top in 0u8..2) {
        let lambda = 2 * half;
        let m = irreducible_module(lambda, top).unwrap();
        let d = ModuleDocument::from_module(&m);
        let back = Document::parse(&Document::Module(d.clone()).to_json()).unwrap();
        prop_assert_eq!(&back, &Document::Module(d));
        prop_assert_eq!(back.into_module().unwrap(), m);
    }
}
