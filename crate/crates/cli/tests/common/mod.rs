use std::path::{Path, PathBuf};
use std::process::Command;

pub struct Case {
    pub name: String,
    pub args: Vec<String>,
    pub expected: PathBuf,
}

pub fn golden_dir() -> PathBuf {
    Path::new(env!("CARGO_MANIFEST_DIR")).join("tests/golden")
}

/// Each `cases/NAME.cmd` holds one argument per line; `NAME.out` holds the
/// exit code line followed by standard output.
pub fn cases() -> Vec<Case> {
    let dir = golden_dir().join("cases");
    let mut out: Vec<Case> = std::fs::read_dir(&dir)
        .expect("golden cases directory")
        .filter_map(|e| {
            let path = e.ok()?.path();
            (path.extension()? == "cmd").then_some(path)
        })
        .map(|path| {
            let text = std::fs::read_to_string(&path).expect("readable case");
            Case {
                name: path.file_stem().unwrap().to_string_lossy().into_owned(),
                args: text.lines().filter(|l| !l.is_empty()).map(str::to_string).collect(),
                expected: path.with_extension("out"),
            }
        })
        .collect();
    out.sort_by(|a, b| a.name.cmp(&b.name));
    out
}

pub fn run(case: &Case) -> String {
    let out = Command::new(env!("CARGO_BIN_EXE_mrb"))
        .args(&case.args)
        .current_dir(golden_dir())
        .output()
        .expect("mrb runs");
    format!(
        "exit: {}\n{}",
        out.status.code().unwrap_or(-1),
        String::from_utf8_lossy(&out.stdout)
    )
}
