"""Small scripted model clients for unit tests."""

from axe.model_client import ModelClient


class Sequence(ModelClient):
    """Returns ``responses`` in order, repeating the last one; records every prompt."""

    def __init__(self, *responses):
        self.responses = list(responses)
        self.prompts = []

    def complete(self, prompt, max_output_tokens=512, temperature=0.0):
        self.prompts.append(prompt)
        i = min(len(self.prompts), len(self.responses)) - 1
        return self.responses[i]


class Keyed(ModelClient):
    """Answers with the response whose key occurs in the prompt, else ``default``."""

    def __init__(self, mapping, default):
        self.mapping = mapping
        self.default = default
        self.prompts = []

    def complete(self, prompt, max_output_tokens=512, temperature=0.0):
        self.prompts.append(prompt)
        for needle, response in self.mapping.items():
            if needle in prompt:
                return response
        return self.default
