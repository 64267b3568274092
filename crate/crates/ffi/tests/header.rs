use std::path::{Path, PathBuf};
use std::process::Command;

fn header() -> PathBuf {
    Path::new(env!("CARGO_MANIFEST_DIR")).join("include/qshare.h")
}

#[test]
fn header_declares_every_entry_point() {
    let text = std::fs::read_to_string(header()).expect("build script writes the header");
    for decl in [
        "typedef struct QsScheme QsScheme;",
        "typedef struct QsReport QsReport;",
        "QS_STATUS_VERDICT_FAILED = 1",
        "QS_STATUS_PANIC = 5",
        "qs_scheme_builtin(const char *name, struct QsScheme **out)",
        "qs_scheme_threshold(uint32_t t, uint32_t n, uint32_t q, struct QsScheme **out)",
        "qs_scheme_from_json(",
        "void qs_scheme_free(struct QsScheme *scheme)",
        "qs_verify(const struct QsScheme *scheme,",
        "char *qs_report_to_json(const struct QsReport *report)",
        "void qs_string_free(char *s)",
        "qs_rates(",
        "qs_recovery_fidelity(",
        "qs_von_neumann_entropy(const double *data, size_t dim, double *out)",
        "qs_classify(const char *structure, struct QsAccessFlags *out)",
        "char *qs_last_error_message(void)",
    ] {
        assert!(text.contains(decl), "missing `{decl}`");
    }
}

fn cc() -> Option<String> {
    let cc = std::env::var("CC").unwrap_or_else(|_| "cc".into());
    Command::new(&cc).arg("--version").output().ok().filter(|o| o.status.success()).map(|_| cc)
}

/// `target/<profile>` next to the running test binary (`.../deps/header-*`).
fn profile_dir() -> PathBuf {
    let exe = std::env::current_exe().unwrap();
    exe.parent().and_then(Path::parent).unwrap().to_path_buf()
}

#[test]
fn c_program_links_against_static_library() {
    let Some(cc) = cc() else {
        eprintln!("no C compiler found; skipping link test");
        return;
    };
    let lib = profile_dir().join("libqshare_ffi.a");
    assert!(lib.exists(), "static library missing at {}", lib.display());
    let dir = tempfile::tempdir().unwrap();
    let src = dir.path().join("smoke.c");
    std::fs::write(
        &src,
        r#"
#include <math.h>
#include <stdio.h>
#include "qshare.h"

int main(void) {
    QsScheme *s = NULL;
    if (qs_scheme_builtin("cgl23", &s) != QS_STATUS_OK) return 10;
    QsReport *r = NULL;
    if (qs_verify(s, 1e-7, false, &r) != QS_STATUS_OK) return 11;
    if (!qs_report_overall(r)) return 12;
    if (fabs(qs_report_reference_mutual_information(r) - 2.0 * log2(3.0)) > 1e-9) return 13;
    double f = 0.0;
    if (qs_recovery_fidelity(s, "P2,P3", 1e-9, &f) != QS_STATUS_OK || f < 1.0 - 1e-9) return 14;
    if (qs_recovery_fidelity(s, "P2", 1e-9, &f) != QS_STATUS_VERDICT_FAILED) return 15;
    char *msg = qs_last_error_message();
    if (msg == NULL) return 16;
    qs_string_free(msg);
    qs_report_free(r);
    qs_scheme_free(s);
    printf("ok\n");
    return 0;
}
"#,
    )
    .unwrap();
    let exe = dir.path().join("smoke");
    let status = Command::new(&cc)
        .arg("-std=c99")
        .arg("-Wall")
        .arg("-Werror")
        .arg("-I")
        .arg(header().parent().unwrap())
        .arg(&src)
        .arg(&lib)
        .args(["-lpthread", "-ldl", "-lm"])
        .arg("-o")
        .arg(&exe)
        .status()
        .unwrap();
    assert!(status.success(), "C smoke program failed to compile");
    let out = Command::new(&exe).output().unwrap();
    assert_eq!(out.status.code(), Some(0), "smoke program exit {:?}", out.status);
    assert_eq!(String::from_utf8_lossy(&out.stdout), "ok\n");
}
