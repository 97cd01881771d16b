import logging
from .bundle import Bundle
from .processor import SingleProc, MultiProc
from .provenance import Record
from .verdicts import VerificationReport

logger = logging.getLogger('schrolab')


def run_config(config, processor=None):
    """
    Runs the suites of an experiment configuration and writes the results
    bundle (one CSV per table, the claim report and the provenance) to its
    output directory

    Parameters
    ----------
    config : ExperimentConfig
        The experiment configuration
    processor : Processor | None
        The processor running the suites, SingleProc or MultiProc depending
        on the number of jobs of 'config' if None

    Returns
    -------
    report : VerificationReport
        Verdicts of all claims in suite declaration order
    """
    if processor is None:
        processor = (MultiProc(config.jobs) if config.jobs > 1
                     else SingleProc())
    bundle = Bundle(config.output_dir).create()
    claims, tables = processor.run(config)
    for suite, table in tables:
        bundle.write_table(suite, table)
    report = VerificationReport(claims)
    bundle.save(report, Record(config.to_dict()))
    logger.info("Wrote %d claims and %d tables to %s", len(report),
                len(tables), bundle.path)
    return report


def report(bundle_dir):
    """
    Loads the claim report of a results bundle

    Parameters
    ----------
    bundle_dir : str
        Path to the results bundle

    Returns
    -------
    report : VerificationReport
        The claim verdicts, see VerificationReport.render for the summary
    """
    report, _ = Bundle(bundle_dir).load()
    return report
