use std::env;
use std::path::PathBuf;

fn main() {
    println!("cargo:rerun-if-changed=src/lib.rs");
    println!("cargo:rerun-if-changed=cbindgen.toml");

    let crate_dir = PathBuf::from(env::var("CARGO_MANIFEST_DIR").expect("manifest dir"));
    let config =
        cbindgen::Config::from_file(crate_dir.join("cbindgen.toml")).expect("cbindgen.toml parses");
    match cbindgen::generate_with_config(&crate_dir, config) {
        Ok(bindings) => {
            let out = PathBuf::from(env::var("OUT_DIR").expect("out dir")).join("deckrecon.h");
            bindings.write_to_file(&out);
            // Keep a committed copy for consumers that do not run cargo.
            let include_dir = crate_dir.join("include");
            if std::fs::create_dir_all(&include_dir).is_ok() {
                bindings.write_to_file(include_dir.join("deckrecon.h"));
            }
        }
        Err(err) => println!("cargo:warning=header generation failed: {err}"),
    }
}
