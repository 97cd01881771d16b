import time
import logging
from concurrent.futures import ThreadPoolExecutor
import networkx as nx
from tqdm import tqdm
from schrolab.exceptions import SchrolabError, SchrolabUsageError
from .suites import SUITES
from .verdicts import ClaimResult, FAIL, SKIPPED

logger = logging.getLogger('schrolab')


def suite_graph(names):
    """
    Dependency graph of the named suites, closed under their dependencies

    Parameters
    ----------
    names : list[str]
        The requested suites

    Returns
    -------
    graph : nx.DiGraph
        Edges point from a suite to the suites depending on it
    """
    graph = nx.DiGraph()
    stack = list(names)
    seen = set()
    while stack:
        name = stack.pop()
        if name in seen:
            continue
        seen.add(name)
        graph.add_node(name)
        for dep in SUITES[name].depends_on:
            graph.add_edge(dep, name)
            stack.append(dep)
    return graph


class Processor(object):
    """
    Runs the suites of an experiment configuration in dependency order,
    one topological generation at a time. Suites whose dependencies failed
    are not run and their claims are reported as skipped

    Parameters
    ----------
    jobs : int
        Worker threads, shared between the suites of a generation and the
        numerical work inside each suite
    progress : bool
        Whether to show a progress bar over the suites
    """

    def __init__(self, jobs=1, progress=False):
        if jobs < 1:
            raise SchrolabUsageError(
                "Number of jobs must be positive ({})".format(jobs))
        self._jobs = jobs
        self._progress = progress

    def __repr__(self):
        return "{}(jobs={})".format(type(self).__name__, self.jobs)

    def __eq__(self, other):
        return type(self) is type(other) and self.jobs == other.jobs

    @property
    def jobs(self):
        return self._jobs

    def run(self, config):
        """
        Runs the suites requested by 'config' and those they depend on

        Parameters
        ----------
        config : ExperimentConfig
            The experiment configuration

        Returns
        -------
        claims : list[ClaimResult]
            Claims of all run suites in suite declaration order
        tables : list[tuple(str, Table)]
            (suite, table) pairs in suite declaration order
        """
        graph = suite_graph(config.suites)
        added = sorted(set(graph) - set(config.suites))
        if added:
            logger.info("Adding suite(s) %s required by %s", added,
                        config.suites)
        results = {}
        failed = set()
        progress = tqdm(total=len(graph), desc='suites',
                        disable=not self._progress)
        try:
            for generation in nx.topological_generations(graph):
                to_run = []
                for name in sorted(generation):
                    blocked = [d for d in SUITES[name].depends_on
                               if d in failed]
                    if blocked:
                        results[name] = self._skipped(name, blocked)
                        failed.add(name)
                        progress.update()
                    else:
                        to_run.append(name)
                for name, result in zip(to_run, self._run_generation(
                        to_run, config, results)):
                    results[name] = result
                    if any(c.verdict == FAIL for c in result[0]):
                        failed.add(name)
                    progress.update()
        finally:
            progress.close()
        claims = []
        tables = []
        for name in SUITES:
            if name in results:
                suite_claims, suite_tables, _ = results[name]
                claims.extend(suite_claims)
                tables.extend((name, t) for t in suite_tables)
        return claims, tables

    def _run_generation(self, names, config, results):
        def run(name):
            upstream = dict((d, results[d][2])
                            for d in SUITES[name].depends_on)
            return self._run_suite(name, config, upstream)

        workers = min(self.jobs, len(names))
        if workers < 2:
            return [run(n) for n in names]
        with ThreadPoolExecutor(max_workers=workers) as executor:
            return list(executor.map(run, names))

    def _run_suite(self, name, config, upstream):
        suite = SUITES[name](config)
        logger.info("Running %s suite on %s", name, config.params)
        start = time.time()
        try:
            result = suite.run(upstream, jobs=self.jobs)
        except SchrolabError as e:
            runtime = time.time() - start
            logger.warning("%s suite failed after %.1f s: %s", name,
                           runtime, e)
            return self._failed(suite, e, runtime)
        except Exception as e:
            runtime = time.time() - start
            logger.exception("Unexpected error in %s suite after %.1f s",
                             name, runtime)
            return self._failed(suite, e, runtime)
        runtime = time.time() - start
        for claim in result.claims:
            claim.runtime = runtime
        logger.info("Finished %s suite in %.1f s (%s)", name, runtime,
                    ', '.join('{} {}'.format(c.claim_id, c.verdict)
                              for c in result.claims))
        return result.claims, result.tables, result.outputs

    @staticmethod
    def _failed(suite, error, runtime):
        claims = [ClaimResult(c.claim_id, c.anchor, FAIL, suite.name,
                              runtime=runtime,
                              message='{}: {}'.format(type(error).__name__,
                                                      error))
                  for c in suite.claims]
        return claims, [], {}

    def _skipped(self, name, blocked):
        logger.warning("Skipping %s suite as %s failed", name,
                       ', '.join(blocked))
        claims = [ClaimResult(c.claim_id, c.anchor, SKIPPED, name,
                              message="required suite(s) {} failed".format(
                                  ', '.join(blocked)))
                  for c in SUITES[name].claims]
        return claims, [], {}


class SingleProc(Processor):
    "Runs the suites one after another in the calling thread"

    def __init__(self, progress=False):
        super(SingleProc, self).__init__(jobs=1, progress=progress)


class MultiProc(Processor):
    """
    Runs independent suites concurrently in a thread pool

    Parameters
    ----------
    jobs : int
        Worker threads
    """

    def __init__(self, jobs, progress=False):
        super(MultiProc, self).__init__(jobs=jobs, progress=progress)

