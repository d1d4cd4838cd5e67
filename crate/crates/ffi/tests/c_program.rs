//! Compiles a C program against the generated header and the static library.

use std::path::PathBuf;
use std::process::Command;

const PROGRAM: &str = r#"
#include <stdio.h>
#include <string.h>
#include "twotorsion.h"

int main(void) {
    TtPolygon *p = NULL;
    size_t genus = 0, rho = 0;
    TtClass cls;
    if (tt_polygon_from_vertices("0,0;5,0;0,5", &p) != TT_STATUS_OK) return 10;
    if (tt_polygon_genus(p, &genus) != TT_STATUS_OK || genus != 6) return 11;
    if (tt_polygon_rho(p, &rho) != TT_STATUS_OK || rho != 3) return 12;
    if (tt_polygon_classify(p, &cls) != TT_STATUS_OK || cls != TT_CLASS_ADMISSIBLE) return 13;
    tt_polygon_free(p);

    TtCurve *c = NULL;
    const char *doc = "{\"field\":{\"r\":1},\"terms\":[{\"i\":1,\"j\":0,\"c\":\"1\"},"
                      "{\"i\":3,\"j\":1,\"c\":\"1\"},{\"i\":0,\"j\":3,\"c\":\"1\"},{\"i\":1,\"j\":1,\"c\":\"1\"}]}";
    if (tt_curve_from_json(doc, &c) != TT_STATUS_OK) return 20;
    size_t rank = 99;
    bool nd = false;
    if (tt_curve_is_nondegenerate(c, &nd) != TT_STATUS_OK || !nd) return 21;
    if (tt_curve_hw_rank(c, &rank) != TT_STATUS_OK || rank > 3) return 22;
    tt_curve_free(c);

    char msg[128];
    size_t needed = 0;
    if (tt_polygon_from_vertices("0,0;1,1", &p) != TT_STATUS_INVALID_POLYGON) return 30;
    if (tt_last_error(msg, sizeof msg, &needed) != TT_STATUS_OK || needed != strlen(msg) + 1) return 31;
    if (strcmp(tt_status_name(TT_STATUS_INVALID_POLYGON), "invalid_polygon") != 0) return 32;
    printf("genus=%zu rank=%zu\n", genus, rank);
    return 0;
}
"#;

#[test]
fn c_program_links_and_runs() {
    let manifest = PathBuf::from(env!("CARGO_MANIFEST_DIR"));
    // target/<profile>/deps/<this test> -> target/<profile>
    let profile_dir = std::env::current_exe().unwrap().parent().unwrap().parent().unwrap().to_path_buf();
    let lib = profile_dir.join("libtwotorsion_ffi.a");
    assert!(lib.exists(), "static library missing at {}", lib.display());

    let tmp = PathBuf::from(env!("CARGO_TARGET_TMPDIR"));
    let src = tmp.join("ffi_smoke.c");
    let exe = tmp.join("ffi_smoke");
    std::fs::write(&src, PROGRAM).unwrap();
    let status = Command::new("cc")
        .arg("-std=c99")
        .arg("-Wall")
        .arg("-Werror")
        .arg("-I")
        .arg(manifest.join("include"))
        .arg(&src)
        .arg(&lib)
        .args(["-lpthread", "-ldl", "-lm", "-o"])
        .arg(&exe)
        .status()
        .expect("cc is required for this test");
    assert!(status.success(), "C compilation failed");
    let out = Command::new(&exe).output().unwrap();
    assert!(out.status.success(), "exit {:?}", out.status.code());
    assert!(String::from_utf8_lossy(&out.stdout).starts_with("genus=6 "));
}
