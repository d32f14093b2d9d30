use oes_core::analysis::{infer_base, prevalence};
use oes_core::corpus::{
    load_corpus, validate, ClaimedValue, Corpus, RecordFilter, Section, Site, TABLE1_CSV,
};
use oes_core::FamilyTag;

fn count(corpus: &Corpus, section: Section) -> usize {
    corpus
        .filter(&RecordFilter {
            section: Some(section),
            ..Default::default()
        })
        .len()
}

#[test]
fn section_totals() {
    let c = Corpus::table1();
    assert_eq!(count(&c, Section::A), 134);
    assert_eq!(count(&c, Section::B), 34);
    assert_eq!(count(&c, Section::C1), 17);
    assert_eq!(count(&c, Section::C2), 9);
    assert_eq!(count(&c, Section::C3), 5);
    assert_eq!(count(&c, Section::D), 49);
    assert_eq!(c.len(), 248);
}

#[test]
fn tentative_ten_list() {
    let c = Corpus::table1();
    let tens = c.filter(&RecordFilter {
        section: Some(Section::D),
        value: Some(ClaimedValue::tentative(10)),
        ..Default::default()
    });
    assert_eq!(tens.len(), 20);
    assert!(tens.iter().all(|r| r.family == FamilyTag::Chevron));
    let twenties = c.filter(&RecordFilter {
        value: Some(ClaimedValue::tentative(20)),
        ..Default::default()
    });
    assert_eq!(twenties.len(), 29);
}

#[test]
fn single_vrsac_record() {
    let c = Corpus::table1().filter(&RecordFilter {
        site: Some(Site::Vrs),
        ..Default::default()
    });
    assert_eq!(
        c.records.iter().map(|r| r.id.as_str()).collect::<Vec<_>>(),
        ["Vrs5"]
    );
}

#[test]
fn sections_match_families() {
    for r in Corpus::table1().iter() {
        assert!(
            r.table_section.admits(r.family),
            "{} in {}",
            r.id,
            r.table_section
        );
        if r.table_section == Section::D {
            assert!(r.claimed_value.unwrap().tentative);
        }
        if let Some(text) = &r.notation {
            assert_eq!(oes_core::parse_sign(text).unwrap().classify(), r.family);
        }
    }
}

#[test]
fn part_c_records_are_opaque() {
    let c = Corpus::table1();
    for r in c.iter().filter(|r| r.table_section.part() == "C") {
        assert!(r.notation.is_none());
        assert!(!r.sign.is_evaluable());
    }
    let tor201 = c.iter().find(|r| r.id == "Tor201").unwrap();
    assert_eq!(tor201.family, FamilyTag::Divided);
    assert_eq!(tor201.claimed_value, Some(ClaimedValue::exact(24)));
}

#[test]
fn duplicate_and_cross_listings() {
    let report = validate(&Corpus::table1());
    assert_eq!(report.duplicate_ids(), ["Tor156", "Tor280", "Jel46"]);
    let cross = report.cross_listed_ids();
    for id in ["Tor117", "Tor152", "Med10", "Tor201", "Tor106"] {
        assert!(cross.contains(&id), "{id}");
    }
    assert!(!report.has_mismatches());
}

#[test]
fn csv_round_trip_is_byte_identical() {
    let c = load_corpus(TABLE1_CSV.as_bytes()).unwrap();
    assert_eq!(c.to_csv(), TABLE1_CSV);
    let again = load_corpus(c.to_csv().as_bytes()).unwrap();
    assert_eq!(again, c);
}

#[test]
fn prevalence_ignores_record_order() {
    let c = Corpus::table1();
    let mut reversed = c.clone();
    reversed.records.reverse();
    let mut rotated = c.clone();
    rotated.records.rotate_left(97);
    assert_eq!(prevalence(&c), prevalence(&reversed));
    assert_eq!(prevalence(&c), prevalence(&rotated));
    assert_eq!(infer_base(&c), infer_base(&rotated));
}

#[test]
fn base_histogram_mass() {
    let b = infer_base(&Corpus::table1());
    let mass: usize = b.histogram.iter().map(|r| r.records).sum();
    assert_eq!(mass, b.score_records);
    assert_eq!(b.score_records, 134);
    let over: Vec<u32> = b.long_runs.iter().map(|r| r.strokes).collect();
    assert_eq!(over, [10, 11, 11, 14, 18]);
    assert_eq!(b.max_run, 18);
}

#[test]
fn site_counts_sum_to_total() {
    let p = prevalence(&Corpus::table1());
    assert_eq!(p.sites.iter().map(|s| s.count).sum::<usize>(), 248);
    let listed: usize = p.lists.iter().map(|l| l.count).sum();
    assert_eq!(listed, 248);
}
