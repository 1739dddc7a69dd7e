"""Command-line surface.

Commands:
    single        one trial, full per-scheme dump (positions, gains, case,
                  power share, rates) as CSV
    sweep-region  mean rates / outage probabilities vs normalized region size
    sweep-power   mean rates / outage probabilities vs total transmit power
    outage        power sweep emitting only the outage-probability columns
    validate      run the oracle battery and print a pass/fail report

Exit codes: 0 success, 1 configuration error, 2 I/O error, 3 validation
failure.  CSV floats use shortest round-trip formatting, so byte-identical
reruns are guaranteed for identical configuration (worker count included).
"""

import argparse
import sys
from dataclasses import replace

from .channel import channel_power_expansion, coupling_matrix
from .config import ConfigError, McConfig, RunConfig, default_config, parse_config
from .oracles import validation_report
from .scenario import Sweep, SweepAxis, draw_scenario, run_sweep, run_trial
from .schemes import Scheme
from .units import dbm_to_watts

SCHEME_ORDER = (
    Scheme.PROPOSED_MA_NOMA,
    Scheme.CONVENTIONAL_NOMA,
    Scheme.CONVENTIONAL_OMA,
    Scheme.OMA_MA,
)

SWEEP_HEADER = (
    "sweep_value,scheme,mean_sum_rate,mean_rate_user1,mean_rate_user2,"
    "outage_prob_user1,outage_prob_user2,trials"
)
OUTAGE_HEADER = "sweep_value,scheme,outage_prob_user1,outage_prob_user2,trials"
SINGLE_HEADER = (
    "scheme,rate_user1,rate_user2,sum_rate,outage_user1,outage_user2,alpha_s,case,"
    "pos_user1_x,pos_user1_y,pos_user2_x,pos_user2_y,gain_user1,gain_user2"
)


def _fmt(value) -> str:
    if isinstance(value, bool):
        return "1" if value else "0"
    if isinstance(value, float):
        return repr(value)
    return str(value)


def _load_config(args) -> RunConfig:
    if args.config is not None:
        try:
            with open(args.config, "r", encoding="utf-8") as fh:
                text = fh.read()
        except OSError as exc:
            raise ConfigError(f"cannot read config file: {exc}") from exc
        cfg = parse_config(text)
    else:
        cfg = default_config()
    mc = cfg.mc
    if args.seed is not None:
        if not 0 <= args.seed < 2**64:
            raise ConfigError("--seed must fit in an unsigned 64-bit integer")
        mc = McConfig(seed=args.seed, trials=mc.trials, workers=mc.workers)
    if args.trials is not None:
        if args.trials < 1:
            raise ConfigError("--trials must be >= 1")
        mc = McConfig(seed=mc.seed, trials=args.trials, workers=mc.workers)
    if args.workers is not None:
        if args.workers < 1:
            raise ConfigError("--workers must be >= 1")
        mc = McConfig(seed=mc.seed, trials=mc.trials, workers=args.workers)
    return replace(cfg, mc=mc)


def _emit(args, lines: list[str]) -> None:
    text = "\n".join(lines) + "\n"
    if args.out is None:
        sys.stdout.write(text)
    else:
        with open(args.out, "w", encoding="utf-8", newline="") as fh:
            fh.write(text)


def _sweep_rows(results) -> list[str]:
    rows = [SWEEP_HEADER]
    for value, stats in results:
        for scheme in SCHEME_ORDER:
            s = stats.per_scheme[scheme]
            rows.append(
                ",".join(
                    [
                        _fmt(float(value)),
                        scheme.value,
                        _fmt(s.mean_sum_rate),
                        _fmt(s.mean_rate_user1),
                        _fmt(s.mean_rate_user2),
                        _fmt(s.outage_prob_user1),
                        _fmt(s.outage_prob_user2),
                        str(stats.trials),
                    ]
                )
            )
    return rows


def _cmd_single(args) -> int:
    cfg = _load_config(args)
    spec = cfg.scenario_spec()
    draw = draw_scenario(spec, 0)
    record = run_trial(draw, cfg.sca)
    rows = [SINGLE_HEADER]
    for scheme in SCHEME_ORDER:
        res = record.result(scheme)
        gains = [
            channel_power_expansion(res.positions[i], coupling_matrix(draw.array, user), user)
            for i, user in enumerate(draw.users)
        ]
        rows.append(
            ",".join(
                [
                    scheme.value,
                    _fmt(res.rate_user1),
                    _fmt(res.rate_user2),
                    _fmt(res.sum_rate),
                    _fmt(res.outage_user1),
                    _fmt(res.outage_user2),
                    _fmt(res.alpha_s) if res.alpha_s is not None else "",
                    res.case_label.value if res.case_label is not None else "",
                    _fmt(res.positions[0].x),
                    _fmt(res.positions[0].y),
                    _fmt(res.positions[1].x),
                    _fmt(res.positions[1].y),
                    _fmt(gains[0]),
                    _fmt(gains[1]),
                ]
            )
        )
    _emit(args, rows)
    return 0


def _cmd_sweep_region(args) -> int:
    cfg = _load_config(args)
    results = run_sweep(
        cfg.scenario_spec(),
        Sweep(SweepAxis.REGION_SIZE, cfg.sweeps.region_wavelengths),
        cfg.mc.trials,
        cfg.sca,
        workers=cfg.mc.workers,
    )
    _emit(args, _sweep_rows(results))
    return 0


def _power_sweep(cfg: RunConfig):
    watts = tuple(dbm_to_watts(p) for p in cfg.sweeps.power_dbm)
    results = run_sweep(
        cfg.scenario_spec(),
        Sweep(SweepAxis.TOTAL_POWER, watts),
        cfg.mc.trials,
        cfg.sca,
        workers=cfg.mc.workers,
    )
    # label rows with the dBm values the operator configured
    return [(dbm, stats) for dbm, (_w, stats) in zip(cfg.sweeps.power_dbm, results)]


def _cmd_sweep_power(args) -> int:
    cfg = _load_config(args)
    _emit(args, _sweep_rows(_power_sweep(cfg)))
    return 0


def _cmd_outage(args) -> int:
    cfg = _load_config(args)
    rows = [OUTAGE_HEADER]
    for dbm, stats in _power_sweep(cfg):
        for scheme in SCHEME_ORDER:
            s = stats.per_scheme[scheme]
            rows.append(
                ",".join(
                    [
                        _fmt(float(dbm)),
                        scheme.value,
                        _fmt(s.outage_prob_user1),
                        _fmt(s.outage_prob_user2),
                        str(stats.trials),
                    ]
                )
            )
    _emit(args, rows)
    return 0


def _cmd_validate(args) -> int:
    cfg = _load_config(args)
    checks = validation_report(seed=cfg.mc.seed)
    lines = []
    all_ok = True
    for check in checks:
        status = "PASS" if check.passed else "FAIL"
        all_ok &= check.passed
        lines.append(f"{status} {check.name}: {check.detail}")
    lines.append("all checks passed" if all_ok else "validation FAILED")
    _emit(args, lines)
    return 0 if all_ok else 3


_COMMANDS = {
    "single": _cmd_single,
    "sweep-region": _cmd_sweep_region,
    "sweep-power": _cmd_sweep_power,
    "outage": _cmd_outage,
    "validate": _cmd_validate,
}


def _build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="manoma",
        description="Two-user downlink NOMA simulator with movable receive antennas.",
    )
    sub = parser.add_subparsers(dest="command", required=True)
    for name, help_text in [
        ("single", "one trial, full per-scheme dump as CSV"),
        ("sweep-region", "mean rates vs normalized region size (CSV)"),
        ("sweep-power", "mean rates vs transmit power (CSV)"),
        ("outage", "outage probabilities vs transmit power (CSV)"),
        ("validate", "run the oracle battery; exit 3 on any failure"),
    ]:
        p = sub.add_parser(name, help=help_text)
        p.add_argument("--config", metavar="PATH", help="JSON config file (defaults used if omitted)")
        p.add_argument("--out", metavar="PATH", help="output file (stdout if omitted)")
        p.add_argument("--seed", type=int, help="override mc.seed")
        p.add_argument("--trials", type=int, help="override mc.trials")
        p.add_argument("--workers", type=int, help="override mc.workers")
    return parser


def main(argv=None) -> int:
    args = _build_parser().parse_args(argv)
    try:
        return _COMMANDS[args.command](args)
    except ConfigError as exc:
        print(f"config error: {exc}", file=sys.stderr)
        return 1
    except OSError as exc:
        print(f"i/o error: {exc}", file=sys.stderr)
        return 2


if __name__ == "__main__":
    sys.exit(main())
