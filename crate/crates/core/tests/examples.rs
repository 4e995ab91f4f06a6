macro_rules! example {
    ($name:ident, $file:literal) => {
        #[allow(dead_code)]
        mod $name {
            include!(concat!(env!("CARGO_MANIFEST_DIR"), "/examples/", $file));
        }

        #[test]
        fn $name() {
            $name::run().expect("example runs");
        }
    };
}

example!(primitive_polys, "primitive_polys.rs");
example!(matrix_states, "matrix_states.rs");
example!(roads, "roads.rs");
example!(synthesize, "synthesize.rs");
example!(word_lfsr, "word_lfsr.rs");
example!(counting, "counting.rs");
example!(hankel, "hankel.rs");
