#!/usr/bin/env python
# -*- coding: utf-8 -*-

"""Códecs de texto de las entidades."""

from .cfm_codec import CfmYamlCodec
from .fo_codec import FoCodec
from .linword_codec import LinWordCodec
from .msc_codec import MscTextCodec
from .pdl_codec import PdlCodec

__all__ = ["CfmYamlCodec", "FoCodec", "LinWordCodec", "MscTextCodec", "PdlCodec"]
