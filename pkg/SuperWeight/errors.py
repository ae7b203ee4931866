'''
Exception hierarchy for SuperWeight. Every error carries a machine-readable
``code`` that the command line front end forwards verbatim.
'''


class SuperWeightError(Exception):
    code = 'superweight-error'

    def __init__(self, message='', details=None, code=None):
        if code is not None:
            self.code = code
        self.details = dict(details or {})
        super().__init__(f'ERROR: {message}' if message else f'ERROR: {self.code}')

    def as_dict(self):
        out = {'error': self.code, 'message': str(self)}
        out.update(self.details)
        return out


class ConventionWarning(UserWarning):
    '''Emitted when a documented convention changes a numeric result.'''


class InvalidParameters(SuperWeightError):
    code = 'invalid-parameters'


class GroupTooLarge(SuperWeightError):
    code = 'group-too-large'


class NotParabolic(SuperWeightError):
    code = 'not-parabolic'


class CatalogMismatch(SuperWeightError):
    code = 'catalog-mismatch'


class NoneFound(SuperWeightError):
    code = 'none-found'


class NotBounded(SuperWeightError):
    code = 'not-bounded'


class NotRegularIntegral(SuperWeightError):
    code = 'not-regular-integral'


class SingularAtypicalUnsupported(SuperWeightError):
    code = 'singular-atypical-unsupported'


class ThirdSumUndefined(SuperWeightError):
    code = 'third-sum-undefined'


class IdealNotFinite(SuperWeightError):
    code = 'ideal-not-finite'


class ParseError(SuperWeightError):
    code = 'parse-error'


class InvariantViolation(SuperWeightError):
    code = 'invariant-violation'


class NotDominant(SuperWeightError):
    code = 'not-dominant'


class NotDominantAfterTilde(SuperWeightError):
    code = 'not-dominant-after-tilde'


class SingularIntegralUnsupported(SuperWeightError):
    code = 'singular-integral-unsupported'


class ProviderGap(SuperWeightError):
    code = 'provider-gap'


class NotALieAlgebra(SuperWeightError):
    code = 'not-a-lie-algebra'


class DepthTooLarge(SuperWeightError):
    code = 'depth-too-large'


class WindowTooSmall(SuperWeightError):
    code = 'window-too-small'


class NotInjective(SuperWeightError):
    code = 'not-injective'


class NotBijectiveInput(SuperWeightError):
    code = 'not-bijective-input'


class SpecValidationError(SuperWeightError):
    code = 'spec-validation-error'


class CacheIOError(SuperWeightError):
    code = 'io-error'
