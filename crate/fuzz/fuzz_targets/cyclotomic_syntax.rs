#![no_main]

use libfuzzer_sys::fuzz_target;
use torusq::cyclo::parse_cyclotomic;

fuzz_target!(|data: &[u8]| {
    let Some((&n, rest)) = data.split_first() else {
        return;
    };
    let Ok(text) = std::str::from_utf8(rest) else {
        return;
    };
    let conductor = u32::from(n % 60) + 1;
    if let Ok(v) = parse_cyclotomic(text, conductor) {
        let back = parse_cyclotomic(&v.to_syntax(), v.conductor()).expect("printed syntax parses");
        assert_eq!(back, v);
    }
});
