use repetita::cdawgindex::CdawgRlbwtIndex;
use repetita::cdawgst::CdawgSuffixTree;
use repetita::corpus::{block_family, de_bruijn, fibonacci, thue_morse};
use repetita::lzindex::LzRlbwtIndex;
use repetita::measures::measure;
use repetita::oracles::naive_occurrences;
use repetita::Text;

fn families() -> Vec<Vec<u8>> {
    vec![
        b"0000".to_vec(),
        b"banana".to_vec(),
        block_family(6),
        de_bruijn(5),
        fibonacci(11),
        thue_morse(150),
        b"acgtacgtacgaacgtacgt".to_vec(),
    ]
}

#[test]
fn engines_agree_on_every_substring_of_structured_texts() {
    for bytes in families() {
        let t = Text::from_plain(&bytes).unwrap();
        let lz = LzRlbwtIndex::build(&t);
        let cd = CdawgRlbwtIndex::build(&t);
        let st = CdawgSuffixTree::build(&t);
        let s = t.payload();
        for m in 1..=6.min(s.len()) {
            for i in 0..=s.len() - m {
                let p = &s[i..i + m];
                let want = naive_occurrences(&t, p);
                assert_eq!(lz.locate(p).all(), want);
                assert_eq!(cd.locate(p), want);
                assert_eq!(st.locate(p), want);
                assert_eq!(st.count(p), want.len());
            }
        }
    }
}

#[test]
fn unary_text_sizes() {
    let t = Text::from_plain(b"0000").unwrap();
    let cd = CdawgRlbwtIndex::build(&t);
    assert_eq!(cd.rlbwt().run_count(), 2);
    assert_eq!(cd.cdawg().arc_count(), 8);
    let m = measure(&t);
    assert_eq!((m.r, m.z, m.n_maximal_repeats, m.e), (2, 3, 4, 8));
}

#[test]
fn matching_statistics_of_a_text_against_itself() {
    for bytes in families() {
        let t = Text::from_plain(&bytes).unwrap();
        let st = CdawgSuffixTree::build(&t);
        let s = t.payload();
        let ms = st.matching_statistics(s);
        let want: Vec<usize> = (0..s.len()).map(|i| s.len() - i).collect();
        assert_eq!(ms, want);
    }
}
