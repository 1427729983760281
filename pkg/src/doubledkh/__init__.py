"""Doubled Khovanov, Lee and Bar-Natan homology of links in RP^3."""
