//! Compiles and runs a small C program against the generated header and the
//! static library. Skipped when no C compiler is on the path.

use std::path::PathBuf;
use std::process::Command;

const PROGRAM: &str = r#"
#include <stdio.h>
#include <string.h>
#include "sumset_ramsey.h"

int main(void) {
    SrGroup *g = NULL;
    if (sr_group_parse("Z/4 Z/4 Z", &g) != SR_STATUS_OK) return 10;
    SrColoring *c = NULL;
    if (sr_coloring_parse(g, "support", 1, &c) != SR_STATUS_OK) return 11;
    SrWitness *w = NULL;
    if (sr_find_witness(c, 1, 2, 0, &w) != SR_STATUS_OK) return 12;
    if (sr_witness_len(w) != 2) return 13;
    char *col = sr_witness_color(w);
    int bad = strcmp(col, "Seq[(1/2,0)]") != 0;
    sr_string_free(col);
    sr_witness_free(w);
    sr_coloring_free(c);
    sr_group_free(g);
    if (bad) return 14;
    if (sr_group_parse("Q", &g) != SR_STATUS_INPUT) return 15;
    if (sr_last_error() == NULL) return 16;
    printf("ok\n");
    return 0;
}
"#;

fn find_compiler() -> Option<&'static str> {
    ["cc", "gcc", "clang"]
        .into_iter()
        .find(|cc| Command::new(cc).arg("--version").output().is_ok_and(|o| o.status.success()))
}

#[test]
fn c_program_links_and_runs() {
    let Some(cc) = find_compiler() else {
        eprintln!("no C compiler found, skipping");
        return;
    };
    let manifest = PathBuf::from(env!("CARGO_MANIFEST_DIR"));
    // target/<profile>/deps/<test binary>
    let profile_dir = std::env::current_exe().unwrap().parent().unwrap().parent().unwrap().to_path_buf();
    let lib = profile_dir.join("libsumset_ramsey_ffi.a");
    if !lib.exists() {
        eprintln!("{} not built, skipping", lib.display());
        return;
    }
    let work = PathBuf::from(env!("CARGO_TARGET_TMPDIR"));
    let src = work.join("ffi_smoke.c");
    let exe = work.join("ffi_smoke");
    std::fs::write(&src, PROGRAM).unwrap();
    let status = Command::new(cc)
        .arg("-std=c99")
        .arg("-I")
        .arg(manifest.join("include"))
        .arg(&src)
        .arg(&lib)
        .args(["-lpthread", "-ldl", "-lm", "-o"])
        .arg(&exe)
        .status()
        .unwrap();
    assert!(status.success(), "C compilation failed");
    let out = Command::new(&exe).output().unwrap();
    assert!(out.status.success(), "C program exited with {:?}", out.status.code());
    assert_eq!(String::from_utf8_lossy(&out.stdout), "ok\n");
}
