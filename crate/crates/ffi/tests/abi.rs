use std::ffi::{c_char, CStr, CString};
use std::path::Path;
use std::process::Command;
use std::ptr;

use qdbraid_ffi::*;

fn last_error() -> String {
    unsafe { CStr::from_ptr(qd_last_error()) }.to_string_lossy().into_owned()
}

fn double(group: &str, cocycle: &str) -> Result<*mut QdDouble, (QdStatus, String)> {
    let g = CString::new(group).unwrap();
    let c = CString::new(cocycle).unwrap();
    let mut out = ptr::null_mut();
    let status = unsafe { qd_double_new(g.as_ptr(), c.as_ptr(), ptr::null(), &mut out) };
    if status == QdStatus::Ok {
        Ok(out)
    } else {
        Err((status, last_error()))
    }
}

#[test]
fn double_lifecycle_and_verification() {
    let d = double("cyclic:4", "cyclic:1").unwrap();
    unsafe {
        assert_eq!(qd_double_group_order(d), 4);
        assert_eq!(qd_double_root_order(d), 4);
        let mut passed = 0;
        assert_eq!(qd_double_verify(d, &mut passed), QdStatus::Ok);
        assert_eq!(passed, 1);
        qd_double_free(d);
    }

    let g = CString::new("cyclic:2").unwrap();
    let c = CString::new("cyclic:1").unwrap();
    let v = CString::new("theta:printed").unwrap();
    let mut out = ptr::null_mut();
    unsafe {
        assert_eq!(qd_double_new(g.as_ptr(), c.as_ptr(), v.as_ptr(), &mut out), QdStatus::Ok);
        let mut passed = 1;
        assert_eq!(qd_double_verify(out, &mut passed), QdStatus::Ok);
        assert_eq!(passed, 0);
        assert!(last_error().contains("associativity"), "{}", last_error());
        qd_double_free(out);
    }
}

#[test]
fn errors_are_reported() {
    let (status, msg) = double("cyclic:x", "trivial").unwrap_err();
    assert_eq!(status, QdStatus::InvalidArgument);
    assert!(!msg.is_empty());
    assert_eq!(double("symmetric:3", "cyclic:1").unwrap_err().0, QdStatus::InvalidArgument);
    let mut out = ptr::null_mut();
    unsafe {
        assert_eq!(qd_double_new(ptr::null(), ptr::null(), ptr::null(), &mut out), QdStatus::NullPointer);
        let bad = [0xffu8, 0];
        let c = CString::new("trivial").unwrap();
        assert_eq!(qd_double_new(bad.as_ptr() as *const c_char, c.as_ptr(), ptr::null(), &mut out), QdStatus::InvalidUtf8);
        let mut rep = ptr::null_mut();
        assert_eq!(qd_rep_new(ptr::null(), 2, &mut rep), QdStatus::NullPointer);
        assert_eq!(qd_double_group_order(ptr::null()), 0);
        qd_double_free(ptr::null_mut());
    }
    let d = double("cyclic:2", "trivial").unwrap();
    unsafe {
        let mut rep = ptr::null_mut();
        assert_eq!(qd_rep_new(d, 0, &mut rep), QdStatus::InvalidArgument);
        assert_eq!(qd_rep_new(d, 2, &mut rep), QdStatus::Ok);
        assert!(last_error().is_empty());
        let mut op = ptr::null_mut();
        assert_eq!(qd_rep_braid_generator(rep, 2, &mut op), QdStatus::InvalidArgument);
        qd_rep_free(rep);
        qd_double_free(d);
    }
}

#[test]
fn operators_match_the_library() {
    use qdbraid::braidrep::TensorPowerRep;
    use qdbraid::cocycle::Cocycle3;
    use qdbraid::double::TwistedDouble;

    let d = double("cyclic:2", "cyclic:1").unwrap();
    let expected = TensorPowerRep::new(TwistedDouble::new(Cocycle3::cyclic(2, 1).unwrap()), 3).unwrap();
    unsafe {
        let mut rep = ptr::null_mut();
        assert_eq!(qd_rep_new(d, 3, &mut rep), QdStatus::Ok);
        assert_eq!(qd_rep_dim(rep), 64);
        let mut op = ptr::null_mut();
        assert_eq!(qd_rep_braid_generator(rep, 2, &mut op), QdStatus::Ok);
        assert_eq!((qd_op_dim(op), qd_op_root_order(op)), (64, 2));
        let mut perm = vec![0u32; 64];
        let mut scal = vec![0u32; 64];
        assert_eq!(qd_op_perm(op, perm.as_mut_ptr(), 63), QdStatus::BufferTooSmall);
        assert_eq!(qd_op_perm(op, perm.as_mut_ptr(), perm.len()), QdStatus::Ok);
        assert_eq!(qd_op_scal(op, scal.as_mut_ptr(), scal.len()), QdStatus::Ok);
        let reference = expected.braid_generator(2).unwrap();
        assert_eq!((perm.as_slice(), scal.as_slice()), (reference.perm(), reference.scal()));
        qd_op_free(op);

        assert_eq!(qd_rep_pure_generator(rep, 1, 3, &mut op), QdStatus::Ok);
        assert_eq!(qd_op_perm(op, perm.as_mut_ptr(), perm.len()), QdStatus::Ok);
        assert_eq!(perm.as_slice(), expected.pure_braid_generator(1, 3).unwrap().perm());
        qd_op_free(op);
        qd_rep_free(rep);
        qd_double_free(d);
    }
}

#[test]
fn analyze_returns_json() {
    let d = double("cyclic:2", "trivial").unwrap();
    unsafe {
        let mut s = ptr::null_mut();
        assert_eq!(qd_analyze_json(d, 2, 0, &mut s), QdStatus::Ok);
        let v: serde_json::Value = serde_json::from_str(CStr::from_ptr(s).to_str().unwrap()).unwrap();
        qd_string_free(s);
        assert_eq!(v["braid"]["order"], 4);
        assert_eq!(v["pure"]["order"], 2);

        assert_eq!(qd_analyze_json(d, 2, 3, &mut s), QdStatus::Ok);
        let v: serde_json::Value = serde_json::from_str(CStr::from_ptr(s).to_str().unwrap()).unwrap();
        qd_string_free(s);
        assert_eq!(v["braid"]["complete"], false);
        qd_double_free(d);
    }
}

#[test]
fn coxeter() {
    let mut finite = -1;
    unsafe {
        assert_eq!(qd_coxeter_finite(3, 5, &mut finite), QdStatus::Ok);
        assert_eq!(finite, 1);
        assert_eq!(qd_coxeter_finite(4, 4, &mut finite), QdStatus::Ok);
        assert_eq!(finite, 0);
        assert_eq!(qd_coxeter_finite(0, 4, &mut finite), QdStatus::InvalidArgument);
        assert_eq!(qd_coxeter_finite(3, 4, ptr::null_mut()), QdStatus::NullPointer);
    }
}

#[test]
fn header_compiles_as_c() {
    let include = Path::new(env!("CARGO_MANIFEST_DIR")).join("include");
    let header = std::fs::read_to_string(include.join("qdbraid.h")).unwrap();
    for name in ["qd_double_new", "qd_rep_braid_generator", "qd_op_perm", "qd_analyze_json", "qd_last_error", "QD_STATUS_OK"] {
        assert!(header.contains(name), "{name} missing from header");
    }
    let dir = tempfile::tempdir().unwrap();
    let src = dir.path().join("probe.c");
    std::fs::write(
        &src,
        "#include \"qdbraid.h\"\nint probe(void) { QdDouble *d = 0; return qd_double_new(\"cyclic:2\", \"trivial\", 0, &d) == QD_STATUS_OK; }\n",
    )
    .unwrap();
    let Ok(out) = Command::new("cc").arg("-fsyntax-only").arg("-Wall").arg("-I").arg(&include).arg(&src).output() else {
        eprintln!("no C compiler; header syntax not checked");
        return;
    };
    assert!(out.status.success(), "{}", String::from_utf8_lossy(&out.stderr));
}
