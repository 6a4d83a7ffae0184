macro_rules! example {
    ($module:ident, $file:literal) => {
        mod $module {
            include!(concat!(env!("CARGO_MANIFEST_DIR"), "/examples/", $file));
        }
    };
}

example!(class_groups, "class_groups.rs");
example!(frobenius_decomposition, "frobenius_decomposition.rs");
example!(fsignature, "fsignature.rs");
example!(per_class, "per_class.rs");
example!(verify_corpus, "verify_corpus.rs");
example!(ring_file, "ring_file.rs");
example!(smith_normal_form, "smith_normal_form.rs");

#[test]
fn class_groups_example_runs() {
    class_groups::run_example().expect("class group example should run");
}

#[test]
fn frobenius_decomposition_example_runs() {
    frobenius_decomposition::run_example().expect("decomposition example should run");
}

#[test]
fn fsignature_example_runs() {
    fsignature::run_example().expect("F-signature example should run");
}

#[test]
fn per_class_example_runs() {
    per_class::run_example().expect("per-class example should run");
}

#[test]
fn verify_corpus_example_runs() {
    verify_corpus::run_example().expect("corpus example should run");
}

#[test]
fn ring_file_example_runs() {
    ring_file::run_example().expect("ring file example should run");
}

#[test]
fn smith_normal_form_example_runs() {
    smith_normal_form::run_example().expect("normal form example should run");
}
