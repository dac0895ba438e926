use std::path::{Path, PathBuf};
use std::process::Command;

fn root() -> PathBuf {
    Path::new(env!("CARGO_MANIFEST_DIR")).to_path_buf()
}

fn exported(src: &str) -> Vec<String> {
    let mut names: Vec<String> = src
        .lines()
        .filter_map(|l| l.trim().strip_prefix("pub unsafe extern \"C\" fn ").or(l.trim().strip_prefix("pub extern \"C\" fn ")))
        .map(|l| l.split('(').next().unwrap().to_string())
        .collect();
    names.sort();
    names
}

fn declared(header: &str) -> Vec<String> {
    let mut names: Vec<String> = header
        .lines()
        .filter(|l| l.ends_with(");") && l.contains("vk_"))
        .map(|l| {
            let head = l.split('(').next().unwrap();
            head.rsplit([' ', '*']).next().unwrap().to_string()
        })
        .collect();
    names.sort();
    names
}

#[test]
fn header_declares_every_export() {
    let src = std::fs::read_to_string(root().join("src/lib.rs")).unwrap();
    let header = std::fs::read_to_string(root().join("include/vknot.h")).unwrap();
    let e = exported(&src);
    assert_eq!(e.len(), 14);
    assert_eq!(e, declared(&header));
}

#[test]
fn header_enum_values_match() {
    use vknot_ffi::{VkInvariant, VkStatus};
    let header = std::fs::read_to_string(root().join("include/vknot.h")).unwrap();
    for (name, v) in [
        ("VK_STATUS_OK", VkStatus::Ok as i32),
        ("VK_STATUS_NULL_POINTER", VkStatus::NullPointer as i32),
        ("VK_STATUS_INVALID_UTF8", VkStatus::InvalidUtf8 as i32),
        ("VK_STATUS_PARSE", VkStatus::Parse as i32),
        ("VK_STATUS_DOMAIN", VkStatus::Domain as i32),
        ("VK_STATUS_BUFFER_TOO_SMALL", VkStatus::BufferTooSmall as i32),
        ("VK_STATUS_PANIC", VkStatus::Panic as i32),
        ("VK_INVARIANT_BRACKET", VkInvariant::Bracket as i32),
        ("VK_INVARIANT_F", VkInvariant::F as i32),
        ("VK_INVARIANT_JONES", VkInvariant::Jones as i32),
        ("VK_INVARIANT_V3", VkInvariant::V3 as i32),
        ("VK_INVARIANT_GPOLY", VkInvariant::Gpoly as i32),
        ("VK_INVARIANT_QUATERNIONIC_GCD", VkInvariant::QuaternionicGcd as i32),
    ] {
        assert!(header.contains(&format!("{name} = {v}")), "{name}");
    }
}

/// Compiles a C program against the header and the static library, then runs it.
#[test]
fn c_program_links_and_runs() {
    let deps = std::env::current_exe().unwrap().parent().unwrap().to_path_buf();
    let lib = [deps.join("libvknot_ffi.a"), deps.parent().unwrap().join("libvknot_ffi.a")]
        .into_iter()
        .find(|p| p.exists())
        .expect("static library is built alongside the tests");
    let out = std::env::var_os("CARGO_TARGET_TMPDIR").map(PathBuf::from).unwrap_or(deps).join("vknot_c_demo");
    let status = Command::new("cc")
        .arg(root().join("tests/demo.c"))
        .arg("-I")
        .arg(root().join("include"))
        .arg(&lib)
        .args(["-lpthread", "-ldl", "-lm", "-o"])
        .arg(&out)
        .status()
        .expect("a C compiler is available");
    assert!(status.success());
    let run = Command::new(&out).output().unwrap();
    assert!(run.status.success(), "{}", String::from_utf8_lossy(&run.stderr));
    assert_eq!(String::from_utf8_lossy(&run.stdout), "A^-4 + A^-12 - A^-16\nparse 3\n");
}
