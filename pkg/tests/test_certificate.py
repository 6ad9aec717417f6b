import dataclasses
import json
from fractions import Fraction
from unittest import TestCase

from knotforge.certificate import (Certificate, Verdict, certify_linear_combination, certify_box,
                                   certify_coprime_nonconcordance, reverify)
from knotforge.exceptions import CertificateInputError
from knotforge.forge import CGBound, forge_family
from knotforge.seifert import block_sum, mirror

from seifert_fixtures import V6, TREFOIL, FIGURE_EIGHT

FAMILY = forge_family(V6, CGBound.from_crossing(6), 3)


def check(certificate: Certificate, name: str):
    return next(c for c in certificate.checks if c.name == name)


class TestLinearCombination(TestCase):
    def test_single_knot(self):
        certificate = certify_linear_combination(FAMILY, [1, 0, 0])
        self.assertEqual(Verdict.OBSTRUCTED, certificate.verdict)
        self.assertEqual([], certificate.failed())
        rho = check(certificate, "rho-bound").witness
        self.assertEqual(Fraction(4 * 313709762, 3), Fraction(rho["rho"]))
        self.assertEqual("418279680", rho["bound"])

    def test_check_names(self):
        certificate = certify_linear_combination(FAMILY, [0, -1, 1])
        self.assertEqual(["reindex", "lemma:arf", "lemma:prime-sums", "lemma:vanishing", "lemma:integral",
                          "generation", "rho-bound"], [c.name for c in certificate.checks])

    def test_reindex(self):
        certificate = certify_linear_combination(FAMILY, [0, -1, 1])
        witness = check(certificate, "reindex").witness
        self.assertEqual(["0", "1", "-1"], witness["normalized"])
        self.assertEqual(-1, witness["sign"])
        self.assertEqual(2, witness["leading_index"])
        self.assertEqual(7, check(certificate, "rho-bound").witness["prime"])

    def test_box(self):
        certificates = certify_box(FAMILY)
        self.assertEqual(26, len(certificates))
        self.assertTrue(all(c.verdict is Verdict.OBSTRUCTED for c in certificates))
        self.assertEqual(["-1", "-1", "-1"], certificates[0].inputs["combination"])
        self.assertEqual(["1", "1", "1"], certificates[-1].inputs["combination"])

    def test_scaling(self):
        for a in ([1, -1, 0], [0, 0, 1]):
            doubled = [2 * x for x in a]
            self.assertEqual(certify_linear_combination(FAMILY, a).verdict,
                             certify_linear_combination(FAMILY, doubled).verdict)

    def test_invalid(self):
        with self.assertRaises(CertificateInputError):
            certify_linear_combination(FAMILY, [0, 0, 0])
        with self.assertRaises(CertificateInputError):
            certify_linear_combination(FAMILY, [1, 0])
        with self.assertRaises(CertificateInputError):
            certify_box(FAMILY, 0)

    def test_sabotaged_family(self):
        first = FAMILY.companions[0]
        odd = dataclasses.replace(first, multiplicity=first.multiplicity - 1)
        family = dataclasses.replace(FAMILY, companions=(odd,) + FAMILY.companions[1:])
        with self.assertLogs("knotforge.certificate", "WARNING"):
            certificate = certify_linear_combination(family, [1, 0, 0])
        self.assertEqual(Verdict.INCONCLUSIVE, certificate.verdict)
        self.assertEqual(["lemma:arf"], [c.name for c in certificate.failed()])
        self.assertNotEqual(FAMILY.sha256(), certificate.family_sha256)


class TestCoprimeSplit(TestCase):
    def test_coprime(self):
        for delta in ("t^2-t+1", "t^2-3t+1"):
            certificate = certify_coprime_nonconcordance(FAMILY, 1, 1, delta)
            self.assertEqual(Verdict.NOT_CONCORDANT_BY_SPLITTING, certificate.verdict)
        self.assertEqual(["coprime", "half-rank", "integral", "blanchfield-nonsingular", "seifert-integral"],
                         [c.name for c in certificate.checks])

    def test_half_rank(self):
        certificate = certify_coprime_nonconcordance(FAMILY, 2, -3, "t^2-t+1")
        self.assertEqual("3", check(certificate, "half-rank").witness["rank"])

    def test_shared_factor(self):
        with self.assertLogs("knotforge.certificate", "WARNING"):
            certificate = certify_coprime_nonconcordance(FAMILY, 1, 1, "2t^2-5t+2")
        self.assertEqual(Verdict.INCONCLUSIVE, certificate.verdict)
        self.assertEqual(["coprime"], [c.name for c in certificate.failed()])

    def test_invalid(self):
        with self.assertRaises(CertificateInputError):
            certify_coprime_nonconcordance(FAMILY, 1, 0, "t^2-t+1")
        with self.assertRaises(CertificateInputError):
            certify_coprime_nonconcordance(FAMILY, 4, 1, "t^2-t+1")
        with self.assertRaises(CertificateInputError):
            certify_coprime_nonconcordance(FAMILY, 1, 1, "0")


class TestReverify(TestCase):
    def test_linear_combination(self):
        certificate = certify_linear_combination(FAMILY, [1, -1, 1])
        self.assertEqual(certificate.verdict, reverify(certificate))
        self.assertEqual(certificate.verdict, reverify(json.loads(certificate.to_bytes())))

    def test_split(self):
        certificate = certify_coprime_nonconcordance(FAMILY, 3, 2, "t^2-3t+1")
        self.assertEqual(certificate.verdict, reverify(certificate.to_json()))

    def test_tampered_witness(self):
        data = certify_linear_combination(FAMILY, [1, 0, 0]).to_json()
        rho = next(c for c in data["checks"] if c["name"] == "rho-bound")
        rho["witness"]["multiplicity"] = "2"
        with self.assertLogs("knotforge.certificate", "WARNING"):
            self.assertEqual(Verdict.INCONCLUSIVE, reverify(data))

    def test_missing_check(self):
        data = certify_linear_combination(FAMILY, [1, 0, 0]).to_json()
        data["checks"] = data["checks"][1:]
        with self.assertLogs("knotforge.certificate", "WARNING"):
            self.assertEqual(Verdict.INCONCLUSIVE, reverify(data))

    def test_malformed_witness(self):
        data = certify_coprime_nonconcordance(FAMILY, 1, 1, "t^2-t+1").to_json()
        data["checks"][0]["witness"] = {}
        with self.assertLogs("knotforge.certificate", "WARNING"):
            self.assertEqual(Verdict.INCONCLUSIVE, reverify(data))

    def test_unknown_kind(self):
        data = certify_linear_combination(FAMILY, [1, 0, 0]).to_json()
        data["kind"] = "Handwave"
        with self.assertRaises(ValueError):
            reverify(data)

    def test_missing_field(self):
        data = certify_linear_combination(FAMILY, [1, 0, 0]).to_json()
        del data["family_sha256"]
        with self.assertRaises(CertificateInputError):
            reverify(data)


class TestMonicFamilies(TestCase):
    """Families whose Alexander polynomial has leading coefficient 1."""

    def test_figure_eight_sum(self):
        family = forge_family(block_sum(FIGURE_EIGHT, FIGURE_EIGHT), CGBound.direct(10), 1, override=True)
        certificate = certify_linear_combination(family, [1])
        self.assertEqual(Verdict.OBSTRUCTED, certificate.verdict)
        self.assertEqual("1", check(certificate, "generation").witness["top_coefficient"])
        with self.assertNoLogs("knotforge.certificate", "WARNING"):
            self.assertEqual(Verdict.OBSTRUCTED, reverify(certificate.to_json()))

    def test_trefoil_and_mirror(self):
        family = forge_family(block_sum(TREFOIL, mirror(TREFOIL)), CGBound.direct(10), 1)
        for a in ([1], [-3]):
            certificate = certify_linear_combination(family, a)
            self.assertEqual(Verdict.OBSTRUCTED, certificate.verdict)
            self.assertEqual(certificate.verdict, reverify(json.loads(certificate.to_bytes())))


class TestSerialization(TestCase):
    def test_deterministic(self):
        first = certify_linear_combination(FAMILY, [1, 1, -1]).to_bytes()
        second = certify_linear_combination(FAMILY, [1, 1, -1]).to_bytes()
        self.assertEqual(first, second)
        self.assertTrue(first.endswith(b"\n"))

    def test_round_trip(self):
        certificate = certify_linear_combination(FAMILY, [0, 1, 0])
        restored = Certificate.from_json(json.loads(certificate.to_bytes()))
        self.assertEqual(certificate, restored)
        self.assertEqual(FAMILY.sha256(), restored.family_sha256)

    def test_layout(self):
        data = certify_linear_combination(FAMILY, [0, 0, 1]).to_json()
        self.assertEqual({"kind", "family_sha256", "inputs", "checks", "verdict"}, set(data))
        self.assertEqual({"name", "claim", "witness", "pass"}, set(data["checks"][0]))
        self.assertEqual("OBSTRUCTED", data["verdict"])
