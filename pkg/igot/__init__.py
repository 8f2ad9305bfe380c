''' Information gain optimized tokenizer adaptation.

Ranks the words of a domain corpus by the information gain a dedicated
token would bring, optionally re-ranks them with a trained heuristic
scorer, extends a byte-level BPE tokenizer with the selection and
measures the token and training savings with a small language model.
'''
