#!/usr/bin/env python
# -*- coding: utf-8 -*-

"""Presentadores de informes."""

from .report_presenter import ReportPresenter

__all__ = ["ReportPresenter"]
