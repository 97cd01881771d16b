import math
from collections import namedtuple
from schrolab.exceptions import SchrolabParameterError


class ReverseHolderVerdict(namedtuple('ReverseHolderVerdict',
                                      ('label', 'q', 'holds', 'reason'))):
    """
    Membership verdict of the reduced potential in a reverse Hoelder class
    B_q. The conditions are sufficient only, so a failing condition is
    reported as 'not implied' rather than as a negative result
    """

    @property
    def verdict(self):
        return 'holds' if self.holds else 'not implied'


def _q_label(q):
    if math.isinf(q):
        return 'B_inf'
    return 'B_{:g}'.format(q)


def classify_reverse_holder(params, q_values=()):
    """
    Emits reverse Hoelder membership verdicts for V/a ~ r^(beta - alpha):
    B_inf when beta - alpha >= 0, B_q when beta - alpha > -N/q, which gives
    B_{N/2} when beta - alpha > -2 and B_N when beta - alpha > -1

    Parameters
    ----------
    params : OperatorParams
        The operator parameters
    q_values : list[float]
        Additional indices q > 1 to classify

    Returns
    -------
    verdicts : list[ReverseHolderVerdict]
        B_inf, B_{N/2}, B_N then the requested indices in order
    """
    exponent = params.vtilde_exponent
    if exponent is None:
        raise SchrolabParameterError(
            "Reverse Hoelder classes are not defined for a vanishing "
            "potential ({})".format(params))
    N = params.N
    verdicts = [ReverseHolderVerdict(
        'B_inf', math.inf, exponent >= 0.0,
        'beta-alpha = {:g} {} 0'.format(
            exponent, '>=' if exponent >= 0.0 else '<'))]
    for q in [N / 2.0, float(N)] + [float(q) for q in q_values]:
        if not q > 1.0:
            raise SchrolabParameterError(
                "Reverse Hoelder index must be greater than 1 ({})"
                .format(q))
        if math.isinf(q):
            verdicts.append(verdicts[0]._replace())
            continue
        bound = -N / q
        holds = exponent > bound
        verdicts.append(ReverseHolderVerdict(
            _q_label(q), q, holds,
            'beta-alpha = {:g} {} -N/q = {:g}'.format(
                exponent, '>' if holds else '<=', bound)))
    return verdicts
