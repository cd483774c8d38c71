"""
Command-line front end

    python app.py milgram --lattice a1.yaml
    python app.py reps --lattice e8.yaml --t 1
    python app.py verify --threads 4 --out report.txt

Artifacts go to stdout or --out, logs and errors to stderr. Exit codes: 0 ok,
2 usage, 3 math domain, 4 verification failure.
"""
from dotenv import load_dotenv
load_dotenv()

import os
import sys
from fractions import Fraction
from typing import Callable, List, Optional

import click
from pydantic import BaseModel, ConfigDict, Field, ValidationError, field_validator

from services import job_service
from utils import constants
from utils.errors import UsageError, VerificationFailure, WeilKitError
from utils.file_utils import save_file
from utils.logging_utils import configure_logging, get_logger

logger = get_logger(__name__)


# ===== JOB CONFIG =====

class JobConfig(BaseModel):
    """Validated flags of one subcommand"""
    model_config = ConfigDict(arbitrary_types_allowed=True)

    command: str
    inputs: List[str] = []
    genus: Optional[int] = Field(default=None, ge=1)
    bound: Optional[Fraction] = None
    precision: int = Field(default=constants.DEFAULT_PRECISION, ge=constants.MIN_PRECISION)
    tol: float = Field(default=constants.DEFAULT_TOLERANCE, gt=0)
    threads: int = Field(default=constants.DEFAULT_THREADS, ge=1)
    out: Optional[str] = None

    @field_validator("bound", mode="before")
    @classmethod
    def parse_bound(cls, v):
        if v is None:
            return v
        try:
            bound = Fraction(str(v))
        except (ValueError, ZeroDivisionError):
            raise ValueError(f"bound must be a rational number, got {v!r}")
        if bound <= 0:
            raise ValueError("bound must be positive")
        return bound

    @field_validator("inputs")
    @classmethod
    def inputs_exist(cls, paths: List[str]) -> List[str]:
        missing = [p for p in paths if not os.path.exists(p)]
        if missing:
            raise ValueError(f"input files not found: {missing}")
        return paths


def fail(e: WeilKitError) -> None:
    click.echo(f"{e.name}: {e}", err=True)
    sys.exit(e.exit_code)


def job_config(command: str, **kwargs) -> JobConfig:
    inputs = [p for p in kwargs.pop("inputs", []) if p]
    options = {k: v for k, v in kwargs.items() if v is not None}
    try:
        return JobConfig(command=command, inputs=inputs, **options)
    except ValidationError as e:
        error = e.errors()[0]
        field = ".".join(str(part) for part in error["loc"])
        fail(UsageError(f"--{field}: {error['msg']}"))


def emit(config: JobConfig, job: Callable[[], job_service.Artifact]) -> None:
    """Run a job, write its artifact and map errors to exit codes"""
    try:
        text, passed = job()
        if config.out:
            save_file(text, config.out)
            logger.info(f"[CLI] ✅ {config.command} wrote {config.out}")
        else:
            click.echo(text, nl=False)
        if not passed:
            raise VerificationFailure(f"{config.command} did not pass")
    except WeilKitError as e:
        fail(e)


# ===== SHARED OPTIONS =====

lattice_option = click.option("--lattice", type=str, required=True, help="Lattice document (.json, .yaml, .txt)")
threads_option = click.option("--threads", type=int, default=None, help="Worker threads [WEILKIT_THREADS]")
out_option = click.option("--out", type=str, default=None, help="Write the artifact here instead of stdout")
bound_option = click.option("--bound", type=str, required=True, help="Truncation bound (rational)")
precision_option = click.option("--precision", type=int, default=None, help="Interval precision in bits [WEILKIT_PRECISION]")
tol_option = click.option("--tol", type=float, default=None, help="Defect tolerance [WEILKIT_TOL]")


# ===== COMMANDS =====

@click.group()
@click.option("--log-json", is_flag=True, help="JSON log lines on stderr [WEILKIT_LOG_JSON]")
@click.option("--log-level", type=str, default=None, help="Logging level [WEILKIT_LOG_LEVEL]")
def cli(log_json: bool, log_level: Optional[str]) -> None:
    """Weil representations, special cycles and modular forms, exactly"""
    configure_logging(log_level, True if log_json else None)


@cli.command()
@lattice_option
@out_option
def disc(lattice: str, out: Optional[str]) -> None:
    """Discriminant group, q-values and signature"""
    config = job_config("disc", inputs=[lattice], out=out)
    emit(config, lambda: job_service.disc_job(lattice))


@cli.command()
@lattice_option
@click.option("--word", type=str, required=True, help="Word document")
@click.option("--genus", type=int, default=None, help="Override the word's genus")
@threads_option
@out_option
def weil(lattice: str, word: str, genus: Optional[int], threads: Optional[int], out: Optional[str]) -> None:
    """Exact matrix of ρ_{L,r}(w)"""
    config = job_config("weil", inputs=[lattice, word], genus=genus, threads=threads, out=out)
    emit(config, lambda: job_service.weil_job(lattice, word, config.genus, config.threads))


@cli.command()
@lattice_option
@out_option
def milgram(lattice: str, out: Optional[str]) -> None:
    """Gauss sum against √|L*/L|·e(sig/8)"""
    config = job_config("milgram", inputs=[lattice], out=out)
    emit(config, lambda: job_service.milgram_job(lattice))


@cli.command()
@lattice_option
@click.option("--t", "t_text", type=str, required=True, help="T, rows separated by ';' (e.g. '1 1/2; 1/2 1')")
@click.option("--mu", type=str, default=None, help="Coset indices, one per slot (default zeros)")
@click.option("--list", "listing", is_flag=True, help="List the tuples instead of counting")
@threads_option
@out_option
def reps(lattice: str, t_text: str, mu: Optional[str], listing: bool, threads: Optional[int], out: Optional[str]) -> None:
    """Representation number |L_{T,μ}|"""
    config = job_config("reps", inputs=[lattice], threads=threads, out=out)
    emit(config, lambda: job_service.reps_job(lattice, t_text, mu, listing, config.threads))


@cli.command()
@lattice_option
@click.option("--genus", type=int, default=1, show_default=True)
@bound_option
@threads_option
@out_option
def theta(lattice: str, genus: int, bound: str, threads: Optional[int], out: Optional[str]) -> None:
    """Theta expansion as an expansion document"""
    config = job_config("theta", inputs=[lattice], genus=genus, bound=bound, threads=threads, out=out)
    emit(config, lambda: job_service.theta_job(lattice, config.genus, config.bound, config.threads))


@cli.command()
@bound_option
@threads_option
@out_option
def hurwitz(bound: str, threads: Optional[int], out: Optional[str]) -> None:
    """H(N) for 0 ≤ N ≤ bound"""
    config = job_config("hurwitz", bound=bound, threads=threads, out=out)
    emit(config, lambda: job_service.hurwitz_job(config.bound, config.threads))


@cli.command()
@bound_option
@threads_option
@out_option
def zagier(bound: str, threads: Optional[int], out: Optional[str]) -> None:
    """Zagier's weight 3/2 series as an expansion document"""
    config = job_config("zagier", bound=bound, threads=threads, out=out)
    emit(config, lambda: job_service.zagier_job(config.bound, config.threads))


@cli.command()
@lattice_option
@out_option
def witt(lattice: str, out: Optional[str]) -> None:
    """Witt index, witness or obstruction, and cusp profile"""
    config = job_config("witt", inputs=[lattice], out=out)
    emit(config, lambda: job_service.witt_job(lattice))


@cli.command("slash-check")
@lattice_option
@click.option("--expansion", type=str, required=True, help="Expansion document")
@click.option("--word", type=str, required=True, help="Word document")
@precision_option
@tol_option
@threads_option
@out_option
def slash_check(lattice: str, expansion: str, word: str, precision: Optional[int], tol: Optional[float],
                threads: Optional[int], out: Optional[str]) -> None:
    """F(w·τ) against j(w, τ)ρ(w)F(τ) at sample points"""
    config = job_config("slash-check", inputs=[lattice, expansion, word], precision=precision, tol=tol,
                        threads=threads, out=out)
    emit(config, lambda: job_service.slash_check_job(lattice, expansion, word, config.tol, config.precision,
                                                     config.threads))


@cli.command()
@click.option("--lattice", "lattices", type=str, multiple=True, help="Extra corpus lattice (repeatable)")
@click.option("--suite", "suites", type=str, multiple=True, help="Run only these suites (repeatable)")
@click.option("--seed", type=int, default=0, show_default=True)
@precision_option
@tol_option
@threads_option
@out_option
def verify(lattices, suites, seed: int, precision: Optional[int], tol: Optional[float], threads: Optional[int],
           out: Optional[str]) -> None:
    """Run the property suites; exits 4 unless all pass"""
    config = job_config("verify", inputs=list(lattices), precision=precision, tol=tol, threads=threads, out=out)
    emit(config, lambda: job_service.verify_job(config.threads, config.precision, config.tol, seed,
                                                config.inputs, list(suites) or None))


def run(argv: Optional[List[str]] = None) -> int:
    """Run the CLI on argv and return the exit status"""
    try:
        cli.main(args=argv, prog_name="weilkit", standalone_mode=False)
    except click.exceptions.Exit as e:
        return e.exit_code
    except click.ClickException as e:
        e.show()
        return e.exit_code
    except click.Abort:
        return 1
    except SystemExit as e:
        return e.code if isinstance(e.code, int) else 1
    return 0


if __name__ == "__main__":
    sys.exit(run())
