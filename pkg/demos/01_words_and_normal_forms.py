"""
Words, Britton reduction and canonical normal forms
===================================================

Build the two shipped HNN extensions, reduce words to their canonical
forms, and watch the defining relations collapse to the identity.
"""

from hnnkit import (
    britton_reduce,
    find_pinch,
    format_word,
    invert_el,
    multiply,
    normal_form,
    parse_word,
    preset,
    stable_letter_signature,
)

# Wise's group: Z^2 base <a,b,c,d | c=ab, c=ba, d=c^2> with stable letters
# s, t conjugating <a> and <b> onto <d>.
wise = preset("wise")
w = lambda text: parse_word(wise.alphabet, text)

# The conjugation relations in action: s^-1 a s = d and t^-1 b t = d.
print("s'as  ->", format_word(britton_reduce(wise, w("s'as"))))
print("t'bt  ->", format_word(britton_reduce(wise, w("t'bt"))))

# A pinch is a subword s^-1 u s with u in the associated subgroup.
print("pinch in s'as :", find_pinch(wise, w("s'as")))
print("pinch in sas' :", find_pinch(wise, w("sas'")), "(a is not a power of d)")

# Normal forms are canonical: two spellings of one element compare equal.
print("as == sd      :", normal_form(wise, w("as")) == normal_form(wise, w("sd")))
print("relator s'asd':", normal_form(wise, w("s'asd'")).is_identity())

# Arithmetic works directly on normal forms.
x = normal_form(wise, w("ast'b"))
print("x * x^-1 is trivial:", multiply(wise, x, invert_el(wise, x)).is_identity())
print("stable letters of x:", stable_letter_signature(x))

# The second example has a free base: F2 with <a^2, b^3> glued to <b^2, aba>.
g2 = preset("g2")
q = lambda text: parse_word(g2.alphabet, text)
print("\ng2: s'aas  ->", format_word(britton_reduce(g2, q("s'aas"))))
print("g2: s'bbbs ->", format_word(britton_reduce(g2, q("s'bbbs"))))
# Here as != sa: a does not lie in <a^2, b^3>, so nothing pinches.
print("g2: as == sa?", normal_form(g2, q("as")) == normal_form(g2, q("sa")))
