#![no_main]

use libfuzzer_sys::fuzz_target;
use torusq::GroupFile;

fuzz_target!(|data: &[u8]| {
    let Ok(text) = std::str::from_utf8(data) else {
        return;
    };
    let Ok(file) = GroupFile::parse(text) else {
        return;
    };
    let printed = file.to_text();
    let back = GroupFile::parse(&printed).expect("printed group file parses");
    assert_eq!(back.to_text(), printed);
    assert_eq!(back.generators.len(), file.generators.len());
    for (a, b) in back.generators.iter().zip(&file.generators) {
        assert_eq!(a.to_matrix(), b.to_matrix());
    }
    assert_eq!(back.form, file.form);
    assert_eq!(back.lattice, file.lattice);
    assert_eq!(back.analytic, file.analytic);
});
