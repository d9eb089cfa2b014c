"""Exit criteria for the toolkit; one PASS/FAIL line per criterion in the summary."""

import contextlib
import itertools
import math
import random
import time
import warnings
from fractions import Fraction

import numpy as np
import pytest

from entropybench.arith import arith_decode, arith_encode, arith_encode_exact, information_content
from entropybench.bench import BenchConfig, BenchRecord, compare_records, run_benchmark
from entropybench.cli import main
from entropybench.huffman import (
    average_length,
    build_tree,
    derive_codebook,
    entropy,
    huffman_decode,
    huffman_encode,
)
from entropybench.netpbm import write_pgm
from entropybench.pipeline import (
    ImagePlane,
    coefficients_to_stream,
    compress_plane,
    decompress_plane,
    dpcm_decode,
    dpcm_encode,
    fdct,
    idct,
    inverse_zigzag,
    psnr,
    rlc_decode,
    rlc_encode,
    stream_to_coefficients,
    zigzag,
)
from entropybench.symbol_model import FrequencyTable, build_frequency_table, to_probability_model

from conftest import ACCEPTANCE_RESULTS, SKEWED_COUNTS, REFERENCE_CODES, ROUNDED_COUNTS
from oracles import optimal_weighted_length

F = Fraction


class TrendDeviation(UserWarning):
    pass


@contextlib.contextmanager
def criterion(name):
    state = {"detail": "ok"}
    try:
        yield state
    except BaseException as e:
        ACCEPTANCE_RESULTS.append((name, False, f"{type(e).__name__}: {str(e).splitlines()[0] if str(e) else ''}"))
        raise
    ACCEPTANCE_RESULTS.append((name, True, state["detail"]))


def test_ac1_huffman_golden():
    with criterion("AC1 Huffman golden example") as st:
        t0 = time.perf_counter()
        tree = build_tree(FrequencyTable(SKEWED_COUNTS))
        book = derive_codebook(tree)
        assert tree.depths() == {0: 1, 2: 3, 14: 3, 136: 3, 222: 3}
        assert book.codes == REFERENCE_CODES
        source = [s for s, n in SKEWED_COUNTS.items() for _ in range(n)]
        bits = huffman_encode(source, book).bit_length
        assert bits == 193
        assert F(bits, len(source)) == F(193, 131)
        assert round(bits / len(source), 4) == 1.4733
        elapsed = time.perf_counter() - t0
        assert elapsed < 1.0
        st["detail"] = f"reference codes, 193 bits, {elapsed * 1000:.1f} ms"


def test_ac2_arithmetic_golden():
    with criterion("AC2 arithmetic golden recurrence") as st:
        model = to_probability_model(FrequencyTable(ROUNDED_COUNTS))
        iv = arith_encode_exact([2, 0, 0, 136, 0], model)
        width = F("0.11") * F("0.63") ** 2 * F("0.1") * F("0.63")
        assert iv.range == width
        assert iv.low == F("0.66667356")
        assert str(float(width)).startswith("0.002750517")
        # [0.6607, 0.66303) is sometimes quoted for this message; the recurrence disagrees
        assert (iv.low, iv.high) != (F("0.6607"), F("0.66303"))
        st["detail"] = f"[{iv.low}, {iv.high}) width {width}"


def _random_case(rng):
    k = rng.randint(1, 256)
    alphabet = rng.sample(range(65536), k)
    weights = [rng.paretovariate(1.0) for _ in alphabet]
    n = round(10 ** (5 * rng.random() ** 3))
    return alphabet, weights, n


def _messages(seed, count=1000):
    rng = random.Random(seed)
    for i in range(count):
        alphabet, weights, n = _random_case(rng)
        if i == 0:
            n = 0
        elif i == 1:
            n = 100_000
        yield alphabet, rng.choices(alphabet, weights, k=n)


def _codec_roundtrip(codec, msg, alphabet):
    # an empty message has no counts; code it against a one-symbol placeholder model
    table = build_frequency_table(msg) if msg else FrequencyTable({alphabet[0]: 1})
    if codec == "huffman":
        tree = build_tree(table)
        return huffman_decode(huffman_encode(msg, derive_codebook(tree)), tree, len(msg)) == msg
    model = to_probability_model(table)
    return arith_decode(arith_encode(msg, model), model, len(msg)) == msg


@pytest.mark.parametrize("codec", ["huffman", "arithmetic"])
def test_ac3_roundtrip_suites(codec):
    with criterion(f"AC3 roundtrip suite ({codec})") as st:
        t0 = time.perf_counter()
        failures, sizes, lengths = 0, set(), []
        for alphabet, msg in _messages(seed=100 + (codec == "arithmetic")):
            sizes.add(len(alphabet))
            lengths.append(len(msg))
            failures += not _codec_roundtrip(codec, msg, alphabet)
        elapsed = time.perf_counter() - t0
        assert len(lengths) == 1000
        assert min(lengths) == 0 and max(lengths) == 100_000
        assert min(sizes) <= 8 and max(sizes) >= 250
        assert failures == 0
        assert elapsed < 120
        st["detail"] = f"1000 messages, {sum(lengths)} symbols, 0 failures, {elapsed:.1f} s"


def test_ac4a_huffman_optimal_exhaustive():
    with criterion("AC4a Huffman optimal vs brute force") as st:
        checked = 0
        for size in range(1, 5):
            for counts in itertools.product(range(1, 9), repeat=size):
                t = FrequencyTable(dict(enumerate(counts)))
                lengths = derive_codebook(build_tree(t)).lengths
                assert sum(t[s] * n for s, n in lengths.items()) == optimal_weighted_length(counts)
                checked += 1
        st["detail"] = f"{checked} tables"


def test_ac4b_entropy_bound():
    with criterion("AC4b H <= avg length < H + 1") as st:
        rng = random.Random(41)
        for _ in range(50):
            k = rng.randint(2, 200)
            counts = {s: rng.randint(1, 10_000) for s in rng.sample(range(65536), k)}
            t = FrequencyTable(counts)
            h = entropy(t)
            avg = average_length(derive_codebook(build_tree(t)), t)
            assert h <= avg + 1e-12 and avg < h + 1
        st["detail"] = "50 distributions"


def test_ac4c_arithmetic_length_bound():
    with criterion("AC4c arithmetic bits <= ceil(info) + 32") as st:
        rng = random.Random(42)
        worst = -math.inf
        for _ in range(50):
            alphabet, weights, _ = _random_case(rng)
            msg = rng.choices(alphabet, weights, k=rng.randint(1, 20_000))
            model = to_probability_model(build_frequency_table(msg))
            bits = arith_encode(msg, model).bit_length
            bound = math.ceil(information_content(msg, model)) + 32
            assert bits <= bound
            worst = max(worst, bits - (bound - 32))
        st["detail"] = f"50 messages, worst overhead {worst} bits"


PUBLISHED = [
    # size, H ratio, A ratio, H time, A time, compression %, time %
    (2048, 6.37, 12.02, 32.67, 63.22, 47, 48),
    (1024, 5.64, 7.73, 8.42, 20.37, 27, 58),
    (512, 5.27, 6.55, 2.13, 5.67, 19, 59),
    (256, 4.78, 5.40, 0.55, 1.63, 11, 66),
    (128, 4.38, 4.65, 0.14, 0.45, 5, 68),
]


def test_ac5_published_percentages():
    with criterion("AC5 published percentage cells") as st:
        mismatches = []
        for size, h, a, ht, at, cpct, tpct in PUBLISHED:
            row = compare_records(
                BenchRecord("t5", size, "huffman", h, 0, [ht]),
                BenchRecord("t5", size, "arithmetic", a, 0, [at]),
            )
            if row.compression_pct != cpct:
                mismatches.append(f"{size} compression {row.compression_pct} != {cpct}")
            if row.time_pct != tpct:
                mismatches.append(f"{size} time {row.time_pct} != {tpct}")
        assert not mismatches, "; ".join(mismatches)
        st["detail"] = "10/10 cells"


def test_ac6_trend():
    with criterion("AC6 trend on natural_mix (pipeline)") as st:
        t0 = time.perf_counter()
        cfg = BenchConfig(sizes=[128, 256, 512], repetitions=10, source="pipeline", seed=0)
        _, rows = run_benchmark(cfg)
        rows.sort(key=lambda r: r.size)
        for r in rows:
            assert r.arithmetic_ratio >= r.huffman_ratio, r
        pcts = [r.compression_pct for r in rows]
        assert pcts == sorted(pcts), pcts
        slow = [r.size for r in rows if not r.huffman_time < r.arithmetic_time]
        if slow:
            warnings.warn(f"Huffman not faster at sizes {slow}", TrendDeviation)
        elapsed = time.perf_counter() - t0
        assert elapsed < 120
        summary = ", ".join(
            f"{r.size}: {r.huffman_ratio:.3f}/{r.arithmetic_ratio:.3f} {r.compression_pct}% "
            f"t {r.huffman_time * 1e3:.1f}/{r.arithmetic_time * 1e3:.1f} ms"
            for r in rows
        )
        flag = f" FLAGGED time-order deviation at {slow}" if slow else ""
        st["detail"] = f"{summary}{flag}"


def test_ac7_pipeline_numerics():
    with criterion("AC7 pipeline numerics") as st:
        t0 = time.perf_counter()
        rng = np.random.default_rng(7)
        blocks = rng.uniform(-128, 127, (100, 8, 8))
        err = np.abs(idct(fdct(blocks)) - blocks).max()
        assert err < 1e-9
        q = rng.integers(-200, 200, (100, 8, 8))
        q[rng.random(q.shape) < 0.7] = 0
        assert np.array_equal(inverse_zigzag(zigzag(q)), q)
        v = q.reshape(100, 64)[:, 0].tolist()
        assert dpcm_decode(dpcm_encode(v)) == v
        for row in zigzag(q)[:, 1:].tolist():
            assert rlc_decode(rlc_encode(row)) == row
        assert np.array_equal(stream_to_coefficients(coefficients_to_stream(q)), q)
        assert np.abs(fdct(np.full((8, 8), 128.0) - 128)).max() == 0
        y, x = np.mgrid[0:64, 0:64]
        plane = ImagePlane.from_array((x * 2 + y * 1.5).astype(np.uint8))
        data = compress_plane(plane)
        quality = psnr(plane, decompress_plane(data))
        ratio = 64 * 64 * 8 / (8 * len(data))
        assert quality >= 30 and ratio > 1
        elapsed = time.perf_counter() - t0
        assert elapsed < 30
        st["detail"] = f"DCT err {err:.1e}, gradient PSNR {quality:.1f} dB, ratio {ratio:.2f}"


def test_ac8_file_losslessness(tmp_path):
    with criterion("AC8 full-file losslessness (raw)") as st:
        rng = np.random.default_rng(8)
        for i in range(20):
            h, w = rng.integers(1, 96, 2)
            kind = i % 3
            if kind == 0:
                a = rng.integers(0, 256, (h, w))
            elif kind == 1:
                a = rng.integers(0, 4, (h, w)) * 60
            else:
                a = np.clip(rng.normal(128, 20, (h, w)), 0, 255)
            src = tmp_path / f"f{i}.pgm"
            src.write_bytes(write_pgm(ImagePlane.from_array(a.astype(np.uint8))))
            for codec in ("huffman", "arith"):
                enc, dec = tmp_path / f"f{i}.{codec}.entc", tmp_path / f"f{i}.{codec}.pgm"
                assert main(["encode", "--codec", codec, "--source", "raw", str(src), str(enc)]) == 0
                assert main(["decode", str(enc), str(dec)]) == 0
                assert dec.read_bytes() == src.read_bytes(), (src, codec)
        st["detail"] = "20 files x 2 codecs byte-identical"
