#!/usr/bin/env python3

# Before running these tests, ensure you have installed dependencies:
# pip install -r requirements/base.txt
# pip install -r requirements/test.txt

import io
import json
import os
import tempfile
import unittest
from pathlib import Path
from unittest.mock import patch

from src.higman_quotients.cli import (EXIT_CAP, EXIT_FAILED, EXIT_OK, EXIT_USAGE, RunConfig,
                                      build_parser, main, parse_budget, resolve_config)
from src.higman_quotients.exceptions import ConfigError

NF_X1X0 = "4*x0.x1 + x1 + 6*x1.x1 + 3*x1.x1.x1"


def clean_environ(**extra):
    env = {key: value for key, value in os.environ.items() if not key.startswith('HQ_')}
    env.update(extra)
    return env


class CliTestCase(unittest.TestCase):

    def run_cli(self, *argv, **env):
        with patch.dict(os.environ, clean_environ(**env), clear=True), \
                patch('sys.stdout', new_callable=io.StringIO) as out:
            code = main(list(argv))
        return code, out.getvalue()

    def run_json(self, *argv, **env):
        code, text = self.run_cli(*argv, '--format', 'structured', **env)
        return code, json.loads(text)


class TestCommands(CliTestCase):

    def test_relator(self):
        code, data = self.run_json('relator', '--no-timings')
        self.assertEqual(code, EXIT_OK)
        self.assertEqual(data['command'], 'relator')
        self.assertEqual(data['results']['g']['g0'], "5*x0.x1 + 8*x1 + x1.x0 + 3*x1.x1 + 6*x1.x1.x1")
        self.assertEqual(data['config']['p'], 3)
        self.assertNotIn('timings', data)

    def test_nf_human_output(self):
        code, text = self.run_cli('nf', 'x1.x0')
        self.assertEqual(code, EXIT_OK)
        lines = text.splitlines()
        self.assertIn(f"results.normal_form: {NF_X1X0}", lines)
        self.assertIn("results.engines_agree: true", lines)
        self.assertIn("status: ok", lines)

    def test_nf_trace(self):
        code, data = self.run_json('nf', 'x1.x0', '--trace', '--strategy', 'random', '--seed', '3')
        self.assertEqual(code, EXIT_OK)
        self.assertEqual(data['results']['trace'][0]['lhs'], 'x1.x0')
        self.assertEqual(data['counters']['descent_violations'], 0)
        self.assertEqual(data['seed'], 3)

    def test_nf_parse_error(self):
        code, data = self.run_json('nf', 'x9')
        self.assertEqual(code, EXIT_USAGE)
        self.assertEqual(data['status'], 'error')

    def test_bad_prime(self):
        code, _ = self.run_cli('relator', '--p', '4')
        self.assertEqual(code, EXIT_USAGE)

    def test_enumerate_cap(self):
        code, data = self.run_json('gamma', 'enumerate', '--cap', '10')
        self.assertEqual(code, EXIT_CAP)
        self.assertEqual(data['status'], 'cap')

    def test_enumerate_dump(self):
        with tempfile.TemporaryDirectory() as tmp:
            dump = Path(tmp) / 'elements.txt'
            code, data = self.run_json('gamma', 'enumerate', '--gens', '0,2', '--dump', str(dump))
            self.assertEqual(code, EXIT_OK)
            self.assertEqual(data['results']['size'], 9)
            self.assertEqual(len(dump.read_text().splitlines()), 9)

    def test_bad_generator_list(self):
        code, _ = self.run_cli('gamma', 'enumerate', '--gens', '0,7')
        self.assertEqual(code, EXIT_USAGE)

    def test_zs_check(self):
        code, data = self.run_json('gamma', 'zs-check')
        self.assertEqual(code, EXIT_OK)
        self.assertEqual((data['results']['sizeS'], data['results']['sizeT'], data['results']['sizeG']),
                         (9, 9, 81))

    def test_bs_check(self):
        code, data = self.run_json('gamma', 'bs-check', '--index', '1')
        self.assertEqual(code, EXIT_OK)
        self.assertEqual(data['results']['pair'], [1, 2])
        self.assertEqual(data['results']['size'], 9)
        self.assertFalse(data['results']['matches_word_level'])
        self.assertEqual(data['results']['collapse_index'], 9)

    def test_word(self):
        code, text = self.run_cli('word', 'a1, a0', '--image')
        self.assertEqual(code, EXIT_OK)
        self.assertIn("results.normal_form: a0^1, a1^4", text.splitlines())

    def test_pclass_and_magnus(self):
        code, text = self.run_cli('pclass', '[a0,a1]')
        self.assertEqual(code, EXIT_OK)
        self.assertIn("results.p_class: 2", text.splitlines())
        code, text = self.run_cli('magnus', '[a0,a1]', '--ngens', '2')
        self.assertIn("results.expansion: 1 + x0.x1 - x1.x0", text.splitlines())

    def test_confluence(self):
        code, data = self.run_json('confluence', '--degree', '3', '--samples', '10', '--max-degree', '5')
        self.assertEqual(code, EXIT_OK)
        self.assertTrue(data['results']['confluent'])

    def test_unknown_command(self):
        with self.assertRaises(SystemExit):
            build_parser().parse_args(['frobnicate'])


class TestExpmapCommands(CliTestCase):

    def test_verify_non_bijection(self):
        with tempfile.TemporaryDirectory() as tmp:
            path = Path(tmp) / 'f.csv'
            path.write_text("x,f\n" + ''.join(f"{x},0\n" for x in range(9)))
            code, data = self.run_json('expmap', 'verify', '--csv-in', str(path))
        self.assertEqual(code, EXIT_FAILED)
        self.assertFalse(data['results']['report']['is_bijection'])
        self.assertEqual(data['status'], 'fail')

    def test_verify_needs_input(self):
        code, _ = self.run_cli('expmap', 'verify')
        self.assertEqual(code, EXIT_USAGE)

    def test_search_writes_outputs(self):
        with tempfile.TemporaryDirectory() as tmp:
            csv_out, profile_out = Path(tmp) / 'f.csv', Path(tmp) / 'profile.csv'
            code, data = self.run_json('expmap', 'search', '--modulus', '9', '--k', '7',
                                       '--csv-out', str(csv_out), '--profile-out', str(profile_out))
            self.assertEqual(code, EXIT_OK)
            self.assertTrue(csv_out.exists() and profile_out.exists())
            self.assertEqual(data['results']['profile']['points'], 9)
            code, _ = self.run_cli('expmap', 'verify', '--k', '7', '--csv-in', str(csv_out))
            self.assertEqual(code, EXIT_OK)

    def test_oracle_pins(self):
        with tempfile.TemporaryDirectory() as tmp:
            pins = Path(tmp) / 'pins.json'
            self.assertEqual(self.run_cli('expmap', 'oracle', '--pins', str(pins))[0], EXIT_OK)
            pinned = json.loads(pins.read_text())
            self.assertIn('expmap.oracle.9.4', pinned)
            self.assertEqual(self.run_cli('expmap', 'oracle', '--pins', str(pins))[0], EXIT_OK)
            pins.write_text(json.dumps({'expmap.oracle.9.4': [-1, -1]}))
            self.assertEqual(self.run_cli('expmap', 'oracle', '--pins', str(pins))[0], EXIT_FAILED)

    def test_oracle_cap(self):
        code, _ = self.run_cli('expmap', 'oracle', '--modulus', '81')
        self.assertEqual(code, EXIT_CAP)

    def test_oracle_budget(self):
        code, _ = self.run_cli('expmap', 'oracle', '--modulus', '27', '--node-budget', '5000')
        self.assertEqual(code, EXIT_CAP)


class TestConfiguration(CliTestCase):

    def test_environment(self):
        args = build_parser().parse_args(['relator'])
        config = resolve_config(args, {'HQ_P': '5', 'HQ_K': '6'})
        self.assertEqual((config.p, config.n, config.k), (5, 2, 6))

    def test_environment_through_main(self):
        code, data = self.run_json('relator', HQ_P='5', HQ_K='11')
        self.assertEqual(code, EXIT_OK)
        self.assertEqual((data['config']['p'], data['config']['k']), (5, 11))

    def test_precedence(self):
        with tempfile.TemporaryDirectory() as tmp:
            path = Path(tmp) / 'run.json'
            path.write_text(json.dumps({'p': 5, 'n': 3, 'k': 6, 'seed': 9}))
            args = build_parser().parse_args(['relator', '--config', str(path), '--k', '11'])
            config = resolve_config(args, {'HQ_N': '2'})
        self.assertEqual((config.p, config.n, config.k, config.seed), (5, 2, 11, 9))

    def test_bad_config_file(self):
        with tempfile.TemporaryDirectory() as tmp:
            path = Path(tmp) / 'run.json'
            path.write_text(json.dumps({'prime': 5}))
            code, _ = self.run_cli('relator', '--config', str(path))
            self.assertEqual(code, EXIT_USAGE)
            code, _ = self.run_cli('relator', '--config', str(Path(tmp) / 'missing.json'))
            self.assertEqual(code, EXIT_USAGE)

    def test_bad_environment_value(self):
        code, _ = self.run_cli('relator', HQ_SEED='abc')
        self.assertEqual(code, EXIT_USAGE)

    def test_parse_budget(self):
        self.assertEqual(parse_budget(60), 60.0)
        self.assertEqual(parse_budget("10s"), 10.0)
        self.assertEqual(parse_budget("2m"), 120.0)
        self.assertEqual(parse_budget("1h"), 3600.0)
        for bad in ("soon", "0", -5, "2d"):
            with self.subTest(value=bad):
                with self.assertRaises(ConfigError):
                    parse_budget(bad)

    def test_echo_drops_presentation_settings(self):
        echo = RunConfig().echo()
        self.assertNotIn('format', echo)
        self.assertNotIn('log_level', echo)
        self.assertEqual(echo['p'], 3)

    def test_byte_identical_without_timings(self):
        first = self.run_cli('gamma', 'zs-check', '--no-timings', '--format', 'structured')
        second = self.run_cli('gamma', 'zs-check', '--no-timings', '--format', 'structured')
        self.assertEqual(first, second)

    def test_out_file(self):
        with tempfile.TemporaryDirectory() as tmp:
            out = Path(tmp) / 'report.json'
            code, text = self.run_cli('relator', '--out', str(out))
            self.assertEqual(code, EXIT_OK)
            self.assertEqual(json.loads(out.read_text())['command'], 'relator')
            self.assertIn("command: relator", text.splitlines())


if __name__ == '__main__':
    unittest.main()
