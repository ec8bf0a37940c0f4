"""Configuration manager for granulum."""

import configparser
import os
from dataclasses import dataclass
from fractions import Fraction
from typing import Any, Callable, Dict, List, Optional, TypeVar

from .granular.errors import InputError

T = TypeVar("T")

DEFAULT_SECTIONS: Dict[str, Dict[str, str]] = {
    'Profiles': {
        'active': 'default',
        'list': 'default'
    },
    'General': {
        'workers': '1',
        'debug': 'false'
    },
    'Enumeration': {
        'powerset_limit': '12',
        'relation_universe_limit': '4',
        'max_block_combinations': '10000000',
        'case1_size_limit': '4'
    },
    'Norms': {
        'grid_denominator': '8'
    },
    'Semiring': {
        'exhaustive_grid_points': '3',
        'sample_size': '20000',
        'seed': '7'
    },
    'Pilot': {
        'seed': '7'
    },
    'Output': {
        'schema': 'granulum/1'
    }
}

TRUE_WORDS = {'1', 'true', 'yes', 'on'}


@dataclass(frozen=True)
class EnumerationLimits:
    """Bounds that keep exhaustive searches finite."""
    powerset_limit: int
    relation_universe_limit: int
    max_block_combinations: int
    case1_size_limit: int


class Config:
    """Run configuration: enumeration limits, seeds, worker counts."""

    def __init__(self, config_file: Optional[str] = None, profile: Optional[str] = None):
        """
        Initialize configuration manager.

        Args:
            config_file: INI file to read; built-in defaults when None
            profile: Profile overriding the active one named in the file
        """
        self.config_file = config_file
        # "p/q" values and percent signs are read literally
        self.config = configparser.ConfigParser(interpolation=None)
        self.load()
        if profile:
            self.set_active_profile(profile)

    def load(self):
        """Read the file, if any, then fill in missing defaults."""
        if self.config_file:
            if not os.path.exists(self.config_file):
                raise InputError(f"No such configuration file: {self.config_file}")
            self.config.read(self.config_file, encoding="utf-8")
        for section, values in DEFAULT_SECTIONS.items():
            if section not in self.config:
                self.config[section] = {}
            for key, value in values.items():
                self.config[section].setdefault(key, value)

    def save(self, path: Optional[str] = None):
        """Write the configuration; loading never does."""
        target = path or self.config_file
        if not target:
            raise ValueError("No configuration file to save to")
        with open(target, 'w', encoding='utf-8') as f:
            self.config.write(f)

    # --- lookups ---------------------------------------------------------------

    @staticmethod
    def _profile_section_name(section: str, profile: str) -> str:
        return f"{section}:{profile}"

    def get(self, section: str, key: str, fallback: Any = None, use_profile: bool = True) -> str:
        """Raw value, `Section:profile` first."""
        if use_profile:
            override = self._profile_section_name(section, self.get_active_profile())
            if self.config.has_option(override, key):
                return self.config.get(override, key)
        if self.config.has_option(section, key):
            return self.config.get(section, key)
        return fallback

    def _typed(self, section: str, key: str, fallback: T, convert: Callable[[str], T], use_profile: bool) -> T:
        raw = self.get(section, key, use_profile=use_profile)
        if raw is None:
            return fallback
        try:
            return convert(raw.strip())
        except (TypeError, ValueError, ZeroDivisionError):
            return fallback

    def get_int(self, section: str, key: str, fallback: int = 0, use_profile: bool = True) -> int:
        return self._typed(section, key, fallback, int, use_profile)

    def get_fraction(self, section: str, key: str, fallback: Fraction = Fraction(0),
                     use_profile: bool = True) -> Fraction:
        """Exact rational such as "3/4"."""
        return self._typed(section, key, fallback, Fraction, use_profile)

    def get_bool(self, section: str, key: str, fallback: bool = False, use_profile: bool = True) -> bool:
        return self._typed(section, key, fallback, lambda raw: raw.lower() in TRUE_WORDS, use_profile)

    def set(self, section: str, key: str, value: Any, use_profile: bool = False):
        if use_profile:
            section = self._profile_section_name(section, self.get_active_profile())
        if section not in self.config:
            self.config[section] = {}
        self.config[section][key] = str(value)

    def get_section(self, section: str, use_profile: bool = True) -> Dict[str, str]:
        """Section with the active profile's overrides applied."""
        merged: Dict[str, str] = dict(self.config[section]) if section in self.config else {}
        if use_profile:
            override = self._profile_section_name(section, self.get_active_profile())
            if override in self.config:
                merged.update(self.config[override])
        return merged

    def limits(self) -> EnumerationLimits:
        defaults = DEFAULT_SECTIONS['Enumeration']
        return EnumerationLimits(**{key: self.get_int('Enumeration', key, int(value))
                                    for key, value in defaults.items()})

    # --- profiles --------------------------------------------------------------

    def get_profiles(self) -> List[str]:
        raw = self.config['Profiles'].get('list', '')
        return [item.strip() for item in raw.split(',') if item.strip()]

    def get_active_profile(self) -> str:
        if 'Profiles' not in self.config:
            return 'default'
        return self.config['Profiles'].get('active', 'default')

    def set_active_profile(self, profile: str):
        """Activate a profile, registering it when new."""
        profiles = self.get_profiles()
        if profile not in profiles:
            profiles.append(profile)
        self.config['Profiles']['list'] = ', '.join(profiles)
        self.config['Profiles']['active'] = profile
