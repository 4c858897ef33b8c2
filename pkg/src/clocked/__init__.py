"""Clocked lambda calculus: clocked reduction, clocked Lévy-Longo trees and term discrimination."""
import sys

# terms are processed recursively; reducts of desk-scale terms can nest deeply
sys.setrecursionlimit(max(sys.getrecursionlimit(), 20000))
