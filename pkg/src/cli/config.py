from typing import Any, Literal

from pydantic import BaseModel, ConfigDict, Field, field_validator, model_validator

from src.models import Classical, KPowerPlusSingleton, Polynomial, PowerAP, UnionAP, format_spec

COMMANDS = ('exact', 'estimate', 'cauchy', 'compare', 'fit', 'verify')
CommandLiteral = Literal.__getitem__(COMMANDS)

# which of n / n_max each command reads
TARGETS = {
    'exact': 'n_max',
    'estimate': 'n',
    'cauchy': 'n',
    'compare': 'n_max',
    'fit': 'n_max',
    'verify': None,
}
QUADRATURE_COMMANDS = ('cauchy', 'compare')


class RunConfig(BaseModel):
    """Validated parameters of one CLI run."""
    model_config = ConfigDict(frozen=True)

    command: CommandLiteral
    spec: Any
    n: int | None = Field(default=None, ge=1)
    n_max: int | None = Field(default=None, ge=0)
    order: Literal[0, 1] = 0
    format: Literal['csv', 'json'] = 'csv'
    precision_digits: int = Field(default=50, ge=15)
    quad_points: int | None = Field(default=None, ge=64)

    @field_validator('spec')
    @classmethod
    def check_spec(cls, value):
        if not isinstance(value, (Classical, PowerAP, Polynomial, UnionAP, KPowerPlusSingleton)):
            raise ValueError(f"spec must be a parsed model, got {type(value).__name__}")
        return value

    @model_validator(mode='after')
    def check_flags(self):
        target = TARGETS[self.command]
        if target == 'n' and self.n is None:
            raise ValueError(f"{self.command} needs --n")
        if target == 'n_max' and self.n_max is None:
            raise ValueError(f"{self.command} needs --nmax")
        if target == 'n_max' and self.command != 'exact' and self.n_max < 1:
            raise ValueError(f"{self.command} needs --nmax of at least 1")
        if target == 'n' and self.n_max is not None:
            raise ValueError(f"{self.command} takes --n, not --nmax")
        if target == 'n_max' and self.n is not None:
            raise ValueError(f"{self.command} takes --nmax, not --n")
        if self.quad_points is not None and self.command not in QUADRATURE_COMMANDS:
            raise ValueError(f"--quad-points only applies to {' and '.join(QUADRATURE_COMMANDS)}")
        return self

    @property
    def spec_text(self) -> str:
        return format_spec(self.spec)
