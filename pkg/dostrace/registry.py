"""Name → object registries for profiles, surrogates and verification testbeds."""

from typing import Any, Callable, Dict, List

from .errors import ParameterError
from .growth.profiles import (
    ExpProfile,
    GrowthProfile,
    PowerProfile,
    StretchedExpProfile,
    TabulatedProfile,
)
from .models.enums import ProfileKind, SurrogateKind
from .strategies import (
    DyadicAgreementSurrogate,
    ExtendedLimitSurrogate,
    LastValueSurrogate,
    LogExtrapolationSurrogate,
    TailMeanSurrogate,
)
from .verify import (
    VerifySettings,
    alt_inequality_fuzz,
    duhamel_fuzz,
    holder_fuzz,
    matrix_model_main_theorem,
    product_fuzz,
    s_vs_epsilon_bridge,
    zeta_fuzz,
)


class ProfileRegistry:
    """Registry of growth-profile factories keyed by profile kind."""

    _factories: Dict[str, Callable[..., GrowthProfile]] = {}

    @classmethod
    def register(cls, kind: str, factory: Callable[..., GrowthProfile]) -> None:
        """
        Register a profile factory.

        Args:
            kind: Profile kind (e.g., "power")
            factory: Callable building the profile from keyword parameters
        """
        cls._factories[kind] = factory

    @classmethod
    def get(cls, kind: str) -> Callable[..., GrowthProfile]:
        """
        Get a profile factory by kind.

        Raises:
            KeyError: If the kind is not registered
        """
        if kind not in cls._factories:
            available = ", ".join(cls._factories.keys())
            raise KeyError(f"Unknown profile kind: {kind}. Available kinds: {available}")
        return cls._factories[kind]

    @classmethod
    def create(cls, kind: str, **params: Any) -> GrowthProfile:
        """Build a profile, rejecting parameters the kind does not take."""
        factory = cls.get(kind)
        try:
            return factory(**params)
        except TypeError as exc:
            raise ParameterError(f"profile {kind}: {exc}") from exc

    @classmethod
    def get_keys(cls) -> List[str]:
        return list(cls._factories.keys())


class SurrogateRegistry:
    """Registry of extended-limit surrogates, parsed from strings like ``tail-mean:0.2``."""

    _factories: Dict[str, Callable[..., ExtendedLimitSurrogate]] = {}

    @classmethod
    def register(cls, kind: str, factory: Callable[..., ExtendedLimitSurrogate]) -> None:
        cls._factories[kind] = factory

    @classmethod
    def get(cls, spec: str) -> ExtendedLimitSurrogate:
        """
        Build a surrogate from its spec string.

        Args:
            spec: ``kind`` or ``kind:param``

        Returns:
            The surrogate

        Raises:
            KeyError: If the kind is not registered
            ParameterError: If the parameter does not parse or is out of range
        """
        kind, _, param = spec.partition(":")
        if kind not in cls._factories:
            available = ", ".join(cls._factories.keys())
            raise KeyError(f"Unknown surrogate: {kind}. Available surrogates: {available}")
        if not param:
            return cls._factories[kind]()
        try:
            value = float(param)
        except ValueError as exc:
            raise ParameterError(f"surrogate parameter must be a number, got {param!r}") from exc
        return cls._factories[kind](value)

    @classmethod
    def get_keys(cls) -> List[str]:
        return list(cls._factories.keys())


class TestbedRegistry:
    """Registry of abstract-verification testbeds keyed by name."""

    __test__ = False  # not a pytest class

    _testbeds: Dict[str, Callable[[VerifySettings], Any]] = {}

    @classmethod
    def register(cls, name: str, testbed: Callable[[VerifySettings], Any]) -> None:
        cls._testbeds[name] = testbed

    @classmethod
    def get(cls, name: str) -> Callable[[VerifySettings], Any]:
        """
        Get a testbed by name.

        Raises:
            KeyError: If the testbed is not registered
        """
        if name not in cls._testbeds:
            available = ", ".join(cls._testbeds.keys())
            raise KeyError(f"Unknown testbed: {name}. Available testbeds: {available}")
        return cls._testbeds[name]

    @classmethod
    def list_all(cls) -> Dict[str, Callable[[VerifySettings], Any]]:
        return cls._testbeds.copy()

    @classmethod
    def get_keys(cls) -> List[str]:
        return list(cls._testbeds.keys())


ProfileRegistry.register(ProfileKind.POWER.value, PowerProfile)
ProfileRegistry.register(ProfileKind.STRETCHED_EXP.value, StretchedExpProfile)
ProfileRegistry.register(ProfileKind.EXP.value, ExpProfile)
ProfileRegistry.register(ProfileKind.TABLE.value, TabulatedProfile.from_csv)

SurrogateRegistry.register(SurrogateKind.LAST_VALUE.value, LastValueSurrogate)
SurrogateRegistry.register(SurrogateKind.TAIL_MEAN.value, TailMeanSurrogate)
SurrogateRegistry.register(SurrogateKind.DYADIC_AGREEMENT.value, DyadicAgreementSurrogate)
SurrogateRegistry.register(
    SurrogateKind.LOG_EXTRAPOLATION.value, lambda order=1: LogExtrapolationSurrogate(int(order))
)

TestbedRegistry.register(
    "main-theorem",
    lambda s: matrix_model_main_theorem(
        s.n or 4096, s.p_spec, s.t, SurrogateRegistry.get(s.surrogate)
    ),
)
TestbedRegistry.register(
    "bridge",
    lambda s: s_vs_epsilon_bridge(s.n or 100_000, s.a_spec, s.b_spec, s.s_grid, s.eps_grid),
)
TestbedRegistry.register(
    "alt", lambda s: alt_inequality_fuzz(s.n_max, s.trials, s.r, s.seed, s.workers)
)
TestbedRegistry.register("zeta", lambda s: zeta_fuzz(s.trials, s.q, s.seed))
TestbedRegistry.register(
    "duhamel", lambda s: duhamel_fuzz(s.trials, s.n or 16, s.t, s.nodes, s.seed, s.workers)
)
TestbedRegistry.register("holder", lambda s: holder_fuzz(s.trials, s.seed))
TestbedRegistry.register("product", lambda s: product_fuzz(s.trials, s.n_max, s.seed, s.workers))
