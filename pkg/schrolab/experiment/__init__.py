from .parameter import Parameter, ParamSpec
from .verdicts import (
    ClaimResult, VerificationReport, PASS, SURROGATE, FAIL, SKIPPED)
from .bundle import Bundle, Table
from .provenance import Record
from .suites import Suite, SuiteResult, Claim, SUITES
from .config import ExperimentConfig, load_config
from .processor import Processor, SingleProc, MultiProc, suite_graph
from .run import run_config, report
