from fractions import Fraction

import pytest

from models.arith import Valuation
from models.scan import FrequencySummary, IntRange, ScanConfig, ScanRecord
from services.errors import DomainError


@pytest.mark.parametrize('text,expected', [('0', Valuation(0)), ('17', Valuation(17)), ('ge:65', Valuation.at_least(65))])
def test_valuation_text_form(text, expected):
    assert Valuation.parse(text) == expected
    assert str(expected) == text


def test_valuation_parse_rejects_garbage():
    with pytest.raises(DomainError):
        Valuation.parse('ge:')


def test_sentinel_meets_bounds_up_to_its_floor():
    assert Valuation.at_least(3).meets(3)
    assert not Valuation.at_least(3).meets(4)


def test_int_range():
    rng = IntRange.parse('2:5')
    assert list(rng) == [2, 3, 4, 5]
    assert len(rng) == 4
    assert str(rng) == '2:5'
    assert len(IntRange(5, 2)) == 0


@pytest.mark.parametrize('text', ['5', '1:2:3', 'a:b', ''])
def test_int_range_rejects_malformed_text(text):
    with pytest.raises(DomainError):
        IntRange.parse(text)


def test_scan_record_rejects_incomplete_row():
    with pytest.raises(DomainError):
        ScanRecord.from_row({'a': '1', 'b': '2'})


def test_scan_record_rejects_bad_boolean():
    row = {
        'a': '1', 'b': '2', 'n': 3, 'case': 'case2', 'valuation': '2', 'predicted_bound': 2,
        'basis': 'complementary-odd', 'anomaly': 'maybe', 'exceptional': False, 'extracted_gcd': '1',
    }
    with pytest.raises(DomainError):
        ScanRecord.from_row(row)


def test_frequency_ratio_is_exact():
    summary = FrequencySummary(p=7, bound=49, case3_pair_count=30, exceptional_count=12)
    assert summary.ratio == Fraction(2, 5)
    assert summary.to_dict()['ratio'] == {'numerator': '2', 'denominator': '5'}
    assert FrequencySummary(p=2, bound=10, case3_pair_count=0, exceptional_count=0).ratio == 0


@pytest.mark.parametrize('row', ['x', 5, None, ['a', 'b']])
def test_scan_record_rejects_non_mapping_rows(row):
    with pytest.raises(DomainError):
        ScanRecord.from_row(row)


def test_scan_fingerprint_ignores_exponents_and_output():
    base = ScanConfig(a_range=IntRange(1, 9), b_range=IntRange(2, 5), exponents=(3,))
    other = ScanConfig(
        a_range=IntRange(1, 9), b_range=IntRange(2, 5), exponents=(3, 4, 5),
        output_path='out.jsonl', worker_count=4,
    )
    assert base.fingerprint() == other.fingerprint() == {
        'a_range': '1:9', 'b_range': '2:5', 'c_range': None,
        'coprime_only': True, 'case_filter': None, 'valuation_cap': 64,
    }
